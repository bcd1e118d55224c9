// Pattern-based static scanners for node classes and their communication ports.
// Source text is never executed; only literal names and same-file simple
// constants are resolved, everything else surfaces as a diagnostic.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "archrec/diagnostics.hpp"
#include "archrec/model.hpp"

namespace archrec::extract
{

// One detected node class, before inventory ids are assigned.
struct ScannedNodeClass
{
    std::string class_name;
    std::optional<std::string> node_name;
    std::vector<std::string> header_files;  // repo-relative
    std::vector<std::string> source_files;  // repo-relative
    CompileType compile_type = CompileType::python;
    std::vector<CommunicationPort> ports;
    bool direct_construction = false;  // entry function constructing a node inline
};

// Scans one script source: classes extending the client-library node base plus
// direct node construction inside module-level entry functions.
std::vector<ScannedNodeClass> scan_python_source(const std::string& text,
                                                 const std::string& rel_path,
                                                 DiagnosticSink& sink);

// Scans a compiled package's headers and sources jointly so class declarations
// pair with out-of-line method definitions. Input pairs are (rel_path, text).
std::vector<ScannedNodeClass> scan_cpp_sources(
    const std::vector<std::pair<std::string, std::string>>& files, DiagnosticSink& sink);

// Ports of a single node class spread over the given file contents.
// Pre: the sources belong to exactly one node class.
std::vector<CommunicationPort> extract_ports(const std::vector<std::string>& class_sources,
                                             CompileType compile_type, DiagnosticSink& sink);

// "sensor_msgs::msg::Image" / "sensor_msgs.msg.Image" -> "sensor_msgs/msg/Image";
// empty when the expression does not normalize to <pkg>/(msg|srv)/<Type>.
std::string normalize_interface_type(const std::string& expr);

}  // namespace archrec::extract
