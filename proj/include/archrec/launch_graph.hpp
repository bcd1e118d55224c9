// LaunchFileAnalyzer stage: include chains, node instances, namespace scopes,
// and the launch_dependencies.json artifact.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "archrec/diagnostics.hpp"
#include "archrec/launch_parse.hpp"
#include "archrec/model.hpp"
#include "archrec/node_extract.hpp"

namespace archrec::launch
{

// One launch-file *instance* in the include tree (the same physical file
// included twice yields two entries).
struct LaunchFileEntry
{
    std::string id;    // lf<k>
    std::string type;  // launch file name
    std::vector<std::string> nodes;                 // directly declared, in order
    std::vector<std::string> included_launch_files; // directly included, in order
    // fully joined scope -> member ids; scopes equal to the entry's own base
    // scope are not listed
    std::map<std::string, std::vector<std::string>> namespace_scopes;
};

struct NodeInstanceEntry
{
    std::string id;  // n<k>
    std::optional<CompileType> node_kind;    // filled by linking
    std::string exec_name;
    std::optional<std::string> class_name;   // filled by linking
    std::string node_name;
    std::string ns;  // effective namespace, "/" for global
    std::vector<Remapping> remappings;
};

struct LaunchDependencyDescription
{
    std::vector<LaunchFileEntry> list_launch_file;
    std::vector<NodeInstanceEntry> node_instances;
    std::vector<std::string> roots;  // entry ids with include in-degree 0

    const LaunchFileEntry* find_entry(const std::string& id) const;
    const NodeInstanceEntry* find_instance(const std::string& id) const;
};

// Launch files recognizable by name anywhere under the repository.
std::vector<fs::path> discover_launch_files(const fs::path& repo_root);

// Depth-first traversal from the given roots (includes in declaration order);
// lf/n identifiers assigned in traversal order. Include cycles are fatal with
// the cycle path listed; unresolved includes become diagnostics.
LaunchDependencyDescription build_launch_dependency_description(
    const std::vector<fs::path>& root_launch_paths, const fs::path& repo_root,
    DiagnosticSink& sink);

// instance id -> classifier id; instances without a mapping are unmatched.
struct InstanceLinks
{
    std::map<std::string, std::string> classifier_of;

    bool linked(const std::string& instance_id) const
    {
        return classifier_of.count(instance_id) > 0;
    }
};

// Match by execution identity first, then by class name; ambiguity resolves
// deterministically to the classifier with the lowest id, with a diagnostic.
InstanceLinks link_instances_to_classifiers(const LaunchDependencyDescription& ldd,
                                            const extract::NodeInventory& inventory,
                                            DiagnosticSink& sink);

// Fills class_name and node_kind on matched instances from the inventory.
void apply_links(LaunchDependencyDescription& ldd, const extract::NodeInventory& inventory,
                 const InstanceLinks& links);

std::vector<Violation> validate_ldd(const LaunchDependencyDescription& ldd);

// Byte-stable artifact emission; throws AnalysisError when invariants fail.
std::string emit_launch_dependency_json(const LaunchDependencyDescription& ldd);
LaunchDependencyDescription load_launch_dependency(const std::string& text);

}  // namespace archrec::launch
