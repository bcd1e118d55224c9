#include "archrec/pipeline.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "archrec/errors.hpp"
#include "archrec/evaluation.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/launch_graph.hpp"
#include "archrec/name_resolution.hpp"
#include "archrec/node_extract.hpp"
#include "archrec/plantuml_parse.hpp"
#include "archrec/sha256.hpp"
#include "archrec/synthesis.hpp"

namespace archrec::pipeline
{
namespace
{

using extract::NodeInventory;
using launch::LaunchDependencyDescription;

std::vector<names::ResolutionInstance> resolution_instances(
    const LaunchDependencyDescription& ldd, const launch::InstanceLinks& links,
    const NodeInventory& inventory)
{
    std::vector<names::ResolutionInstance> out;
    for (const launch::NodeInstanceEntry& inst : ldd.node_instances)
    {
        names::ResolutionInstance r;
        r.instance_id = inst.id;
        r.node_name = inst.node_name;
        r.ns = inst.ns;
        r.remappings = inst.remappings;
        auto it = links.classifier_of.find(inst.id);
        if (it != links.classifier_of.end()) r.classifier = inventory.find(it->second);
        out.push_back(std::move(r));
    }
    return out;
}

std::string relations_json(const std::vector<CommunicationRelation>& relations)
{
    ordered_json j;
    j["relations"] = ordered_json::array();
    for (const CommunicationRelation& r : relations) j["relations"].push_back(relation_to_json(r));
    return j.dump(2) + "\n";
}

std::vector<fs::path> effective_roots(const fs::path& repo_root,
                                      const std::vector<fs::path>& requested,
                                      DiagnosticSink& sink)
{
    if (!requested.empty()) return requested;
    const auto all = launch::discover_launch_files(repo_root);
    if (all.empty()) return {};

    // files included by others are not roots
    std::vector<fs::path> roots;
    std::set<std::string> included;
    DiagnosticSink scratch;
    for (const fs::path& f : all)
    {
        try
        {
            const auto parsed = launch::parse_launch_file(f, std::nullopt, scratch);
            for (const launch::RawInclude& inc : parsed.includes)
            {
                if (inc.literal_segments.empty()) continue;
                fs::path rel;
                for (const std::string& seg : inc.literal_segments) rel /= seg;
                const std::string suffix = rel.generic_string();
                for (const fs::path& candidate : all)
                    if (candidate.generic_string().ends_with(suffix))
                        included.insert(fs::weakly_canonical(candidate).generic_string());
            }
        }
        catch (const InputError&)
        {
        }
    }
    for (const fs::path& f : all)
        if (!included.count(fs::weakly_canonical(f).generic_string())) roots.push_back(f);
    if (roots.empty())
    {
        sink.warning("", "every launch file is included by another; treating all as roots");
        return all;
    }
    return roots;
}

struct ManifestWriter
{
    const fs::path& out_dir;
    std::vector<std::pair<std::string, std::string>> artifacts;  // path, digest

    void record(const std::string& rel_path, const std::string& content)
    {
        write_file(out_dir / rel_path, content);
        artifacts.emplace_back(rel_path, sha256_hex(content));
    }

    void finish(const std::string& status, const std::string& failed_stage)
    {
        std::sort(artifacts.begin(), artifacts.end());
        ordered_json j;
        j["schema_version"] = 1;
        j["status"] = status;
        j["failed_stage"] = failed_stage.empty() ? ordered_json(nullptr)
                                                 : ordered_json(failed_stage);
        j["artifacts"] = ordered_json::array();
        for (const auto& [path, digest] : artifacts)
            j["artifacts"].push_back({{"path", path}, {"sha256", digest}});
        write_file(out_dir / kManifestFile, j.dump(2) + "\n");
    }
};

void flush_diagnostics(const RecoveryJobConfig& config, const DiagnosticSink& sink)
{
    if (config.diagnostics_path)
        write_file(*config.diagnostics_path, sink.to_jsonl());
    else
        sink.print(std::cerr);
}

}  // namespace

int run_pipeline(const RecoveryJobConfig& config, DiagnosticSink& sink)
{
    if (!fs::exists(config.repo_root) || !fs::is_directory(config.repo_root))
    {
        sink.error("", "repository root does not exist: " + config.repo_root.generic_string());
        flush_diagnostics(config, sink);
        return kExitInputError;
    }

    ManifestWriter manifest{config.out_dir, {}};
    std::string stage = "extract";
    try
    {
        NodeInventory inventory = extract::build_inventory(config.repo_root, sink);

        stage = "launch-graph";
        const auto roots = effective_roots(config.repo_root, config.roots, sink);
        if (roots.empty())
            throw AnalysisError("no launch files found under " +
                                config.repo_root.generic_string());
        LaunchDependencyDescription ldd =
            launch::build_launch_dependency_description(roots, config.repo_root, sink);

        stage = "link";
        const launch::InstanceLinks links =
            launch::link_instances_to_classifiers(ldd, inventory, sink);
        launch::apply_links(ldd, inventory, links);

        stage = "describe";
        if (config.llm_enabled && config.endpoint.configured())
            llm::describe_classifiers(inventory, ldd, config.endpoint, sink);
        else
            sink.info("llm", "offline mode; deterministic descriptions kept");

        manifest.record(kInventoryFile, extract::emit_node_inventory(inventory));
        manifest.record(kLaunchFile, launch::emit_launch_dependency_json(ldd));

        stage = "resolve";
        const auto relations =
            names::derive_communication_relations(resolution_instances(ldd, links, inventory),
                                                  sink);
        if (config.dump_relations_path)
            write_file(*config.dump_relations_path, relations_json(relations));

        stage = "synthesize";
        const synth::ArchitectureModel model =
            synth::build_composed_model(ldd, links, inventory, relations, sink);
        for (const AtomicRosNodeClassifier& c : model.atomic_classifiers)
            manifest.record("acd/" + c.id + ".puml", synth::emit_acd(c));
        manifest.record("ccd/system.puml", synth::emit_ccd(model));

        manifest.finish("ok", "");
        flush_diagnostics(config, sink);
        return kExitOk;
    }
    catch (const InputError& e)
    {
        sink.error("", e.what());
        manifest.finish("failed", stage);
        flush_diagnostics(config, sink);
        return kExitInputError;
    }
    catch (const AnalysisError& e)
    {
        sink.error("", e.what());
        manifest.finish("failed", stage);
        flush_diagnostics(config, sink);
        return kExitAnalysisError;
    }
}

void stage_extract(const fs::path& repo_root, const fs::path& out_dir, DiagnosticSink& sink)
{
    if (!fs::exists(repo_root) || !fs::is_directory(repo_root))
        throw InputError("repository root does not exist: " + repo_root.generic_string());
    const NodeInventory inventory = extract::build_inventory(repo_root, sink);
    write_file(out_dir / kInventoryFile, extract::emit_node_inventory(inventory));
}

void stage_launch_graph(const fs::path& repo_root, const std::vector<fs::path>& roots,
                        const std::optional<fs::path>& inventory_path, const fs::path& out_dir,
                        DiagnosticSink& sink)
{
    if (!fs::exists(repo_root) || !fs::is_directory(repo_root))
        throw InputError("repository root does not exist: " + repo_root.generic_string());
    const auto effective = effective_roots(repo_root, roots, sink);
    if (effective.empty())
        throw AnalysisError("no launch files found under " + repo_root.generic_string());
    LaunchDependencyDescription ldd =
        launch::build_launch_dependency_description(effective, repo_root, sink);

    fs::path inv = inventory_path.value_or(out_dir / kInventoryFile);
    if (fs::exists(inv))
    {
        const NodeInventory inventory = extract::load_node_inventory(read_file(inv));
        const auto links = launch::link_instances_to_classifiers(ldd, inventory, sink);
        launch::apply_links(ldd, inventory, links);
    }
    else if (inventory_path)
    {
        throw InputError("node inventory not found: " + inv.generic_string() +
                         " (produce it with the 'extract' subcommand)");
    }
    else
    {
        sink.info("", "no node inventory alongside output; instances stay unlinked");
    }
    write_file(out_dir / kLaunchFile, launch::emit_launch_dependency_json(ldd));
}

void stage_synthesize(const fs::path& out_dir, const std::optional<fs::path>& dump_relations,
                      DiagnosticSink& sink)
{
    const fs::path inv_path = out_dir / kInventoryFile;
    const fs::path ldd_path = out_dir / kLaunchFile;
    if (!fs::exists(inv_path))
        throw InputError("missing " + inv_path.generic_string() +
                         " (produce it with the 'extract' subcommand)");
    if (!fs::exists(ldd_path))
        throw InputError("missing " + ldd_path.generic_string() +
                         " (produce it with the 'launch-graph' subcommand)");

    const NodeInventory inventory = extract::load_node_inventory(read_file(inv_path));
    LaunchDependencyDescription ldd = launch::load_launch_dependency(read_file(ldd_path));
    const auto links = launch::link_instances_to_classifiers(ldd, inventory, sink);

    const auto relations = names::derive_communication_relations(
        resolution_instances(ldd, links, inventory), sink);
    if (dump_relations) write_file(*dump_relations, relations_json(relations));

    const synth::ArchitectureModel model =
        synth::build_composed_model(ldd, links, inventory, relations, sink);
    for (const AtomicRosNodeClassifier& c : model.atomic_classifiers)
        write_file(out_dir / "acd" / (c.id + ".puml"), synth::emit_acd(c));
    write_file(out_dir / "ccd" / "system.puml", synth::emit_ccd(model));
}

int stage_evaluate(const fs::path& recovered, const fs::path& reference,
                   const std::string& format, std::optional<double> fail_under,
                   std::string& report_out, DiagnosticSink& sink)
{
    const eval::ElementSets rec = eval::parse_model_path(recovered, sink);
    const eval::ElementSets ref = eval::parse_model_path(reference, sink);
    const eval::EvaluationReport report = eval::evaluate_sets(rec, ref);
    report_out = format == "json" ? eval::report_to_json(report).dump(2) + "\n"
                                  : eval::report_to_text(report);
    if (fail_under)
    {
        for (const auto* level : {report.acd ? &*report.acd : nullptr,
                                  report.ccd ? &*report.ccd : nullptr})
            if (level && level->macro.f1 < *fail_under) return kExitThresholdFailure;
    }
    return kExitOk;
}

}  // namespace archrec::pipeline
