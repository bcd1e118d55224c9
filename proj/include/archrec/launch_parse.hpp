// Static launch-file parsing over the declarative subset: launch-description
// construction, node actions, include actions, and group actions with namespace
// push. Dynamic constructs surface as unresolved-element diagnostics.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "archrec/diagnostics.hpp"

namespace archrec::launch
{

namespace fs = std::filesystem;

enum class LaunchFormat
{
    script,
    xml,
    yaml,
};

// From extension: .py -> script, .xml -> xml, .yaml/.yml -> yaml.
// Throws InputError for anything else.
LaunchFormat infer_format(const fs::path& path);

struct RawRemap
{
    std::string from;
    std::string to;
};

struct RawNodeDecl
{
    std::string package;
    std::string executable;            // exec / plugin / class identity
    std::optional<std::string> name;   // runtime node name, when declared
    std::optional<std::string> ns_attribute;
    std::vector<RawRemap> remappings;
    std::vector<std::string> group_namespaces;  // pushes in effect, outer to inner
    bool conditional = false;
    int order = 0;  // declaration position among this file's actions
};

struct RawInclude
{
    std::string source_text;  // include expression as written
    std::vector<std::string> literal_segments;   // quoted path pieces, in order
    std::optional<std::string> share_package;    // package whose share dir anchors the path
    std::vector<std::string> group_namespaces;
    bool conditional = false;
    int order = 0;
};

struct ParsedLaunchFile
{
    fs::path path;
    LaunchFormat format = LaunchFormat::script;
    std::vector<RawNodeDecl> nodes;
    std::vector<RawInclude> includes;
};

// Parses one launch file. Missing file -> InputError. Dynamic constructs are
// recorded as diagnostics and parsing continues.
ParsedLaunchFile parse_launch_file(const fs::path& path, std::optional<LaunchFormat> format,
                                   DiagnosticSink& sink);

}  // namespace archrec::launch
