// Staged pipeline orchestration: extract -> launch-graph -> link -> resolve ->
// synthesize, with a digest manifest making determinism checkable.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "archrec/diagnostics.hpp"
#include "archrec/llm_client.hpp"

namespace archrec::pipeline
{

namespace fs = std::filesystem;

struct RecoveryJobConfig
{
    fs::path repo_root;
    fs::path out_dir;
    std::vector<fs::path> roots;  // empty -> discover all non-included launch files
    bool llm_enabled = true;      // --no-llm clears this
    std::optional<fs::path> diagnostics_path;
    std::optional<fs::path> dump_relations_path;
    llm::EndpointConfig endpoint;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitAnalysisError = 2;
inline constexpr int kExitThresholdFailure = 3;

// Full staged run. Writes atomic_ros_nodes.json, launch_dependencies.json, the
// ACD/CCD PlantUML files, and manifest.json (artifact digests). A fatal stage
// keeps earlier artifacts and marks the failed stage in the manifest.
int run_pipeline(const RecoveryJobConfig& config, DiagnosticSink& sink);

// Single stages (used by the CLI subcommands; chaining them reproduces
// run_pipeline outputs byte-for-byte).
void stage_extract(const fs::path& repo_root, const fs::path& out_dir, DiagnosticSink& sink);
void stage_launch_graph(const fs::path& repo_root, const std::vector<fs::path>& roots,
                        const std::optional<fs::path>& inventory_path, const fs::path& out_dir,
                        DiagnosticSink& sink);
void stage_synthesize(const fs::path& out_dir, const std::optional<fs::path>& dump_relations,
                      DiagnosticSink& sink);

// evaluate subcommand body; returns an exit code (threshold failures -> 3).
int stage_evaluate(const fs::path& recovered, const fs::path& reference,
                   const std::string& format, std::optional<double> fail_under,
                   std::string& report_out, DiagnosticSink& sink);

// Artifact names under out_dir.
inline constexpr const char* kInventoryFile = "atomic_ros_nodes.json";
inline constexpr const char* kLaunchFile = "launch_dependencies.json";
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kRelationsFile = "relations.json";

}  // namespace archrec::pipeline
