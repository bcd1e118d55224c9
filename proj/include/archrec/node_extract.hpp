// NodeAnalyzer stage: scans a repository and produces the atomic node inventory
// artifact (atomic_ros_nodes.json).
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "archrec/diagnostics.hpp"
#include "archrec/model.hpp"
#include "archrec/package_scan.hpp"

namespace archrec::extract
{

struct NodeInventory
{
    struct PackageEntry
    {
        std::string package_name;
        std::vector<AtomicRosNodeClassifier> classifiers;
    };
    std::vector<PackageEntry> packages;

    const AtomicRosNodeClassifier* find(const std::string& id) const;
    size_t classifier_count() const;
};

// Classifiers detected in one package, sorted by class_name; ids are assigned
// later at inventory level so they stay unique across packages.
std::vector<AtomicRosNodeClassifier> extract_atomic_nodes(const PackageDescriptor& package,
                                                          const fs::path& repo_root,
                                                          DiagnosticSink& sink);

// class_name -> execution identity, from entry-point declarations (script
// packages) and build-target declarations (compiled packages).
std::map<std::string, std::string> resolve_executables(const PackageDescriptor& package,
                                                       DiagnosticSink& sink);

// Full stage: scan, extract, resolve, sort, assign arc ids, default descriptions.
NodeInventory build_inventory(const fs::path& repo_root, DiagnosticSink& sink);

// Deterministic description from class name and port summary (the offline default).
std::string default_description(const AtomicRosNodeClassifier& classifier);

// Byte-stable artifact emission; throws AnalysisError when invariants fail.
std::string emit_node_inventory(const NodeInventory& inventory);
NodeInventory load_node_inventory(const std::string& text);

std::vector<Violation> validate_inventory(const NodeInventory& inventory);

}  // namespace archrec::extract
