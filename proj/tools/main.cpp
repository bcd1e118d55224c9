// archrec - architecture recovery for ROS 2 repositories
// Subcommands: run (full pipeline), extract, launch-graph, synthesize, evaluate.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "archrec/diagnostics.hpp"
#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/pipeline.hpp"

namespace
{

using namespace archrec;

void flush(const DiagnosticSink& sink, const std::optional<std::string>& diagnostics_path)
{
    if (diagnostics_path)
        write_file(*diagnostics_path, sink.to_jsonl());
    else
        sink.print(std::cerr);
}

int guarded(const std::function<int()>& body, const DiagnosticSink& sink,
            const std::optional<std::string>& diagnostics_path)
{
    try
    {
        const int code = body();
        flush(sink, diagnostics_path);
        return code;
    }
    catch (const InputError& e)
    {
        flush(sink, diagnostics_path);
        std::cerr << "error: " << e.what() << "\n";
        return pipeline::kExitInputError;
    }
    catch (const AnalysisError& e)
    {
        flush(sink, diagnostics_path);
        std::cerr << "error: " << e.what() << "\n";
        return pipeline::kExitAnalysisError;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"archrec - staged architecture recovery for ROS 2 repositories"};
    app.require_subcommand(1);

    // ---- run
    auto* run = app.add_subcommand("run", "Run the full staged recovery pipeline");
    std::string run_repo, run_out;
    std::vector<std::string> run_roots;
    bool run_no_llm = false;
    std::string run_diagnostics, run_dump_relations;
    run->add_option("--repo", run_repo, "Repository root to analyze")->required();
    run->add_option("--out", run_out, "Output directory for artifacts")->required();
    run->add_option("--root", run_roots, "Root launch file (repeatable)");
    run->add_flag("--no-llm", run_no_llm, "Disable the text-generation client");
    run->add_option("--diagnostics", run_diagnostics, "Write diagnostics as JSONL to this path");
    run->add_option("--dump-relations", run_dump_relations,
                    "Write the derived communication relations as JSON");

    // ---- extract
    auto* extract_cmd = app.add_subcommand("extract", "Scan the repository and write the "
                                                      "atomic node inventory");
    std::string ex_repo, ex_out, ex_diagnostics;
    extract_cmd->add_option("--repo", ex_repo, "Repository root to analyze")->required();
    extract_cmd->add_option("--out", ex_out, "Output directory")->required();
    extract_cmd->add_option("--diagnostics", ex_diagnostics, "Diagnostics JSONL path");

    // ---- launch-graph
    auto* lg = app.add_subcommand("launch-graph", "Parse launch files and write the launch "
                                                  "dependency description");
    std::string lg_repo, lg_out, lg_inventory, lg_diagnostics;
    std::vector<std::string> lg_roots;
    lg->add_option("--repo", lg_repo, "Repository root to analyze")->required();
    lg->add_option("--out", lg_out, "Output directory")->required();
    lg->add_option("--root", lg_roots, "Root launch file (repeatable)");
    lg->add_option("--inventory", lg_inventory,
                   "Node inventory used to link instances (default: <out>/atomic_ros_nodes.json)");
    lg->add_option("--diagnostics", lg_diagnostics, "Diagnostics JSONL path");

    // ---- synthesize
    auto* synth_cmd = app.add_subcommand("synthesize", "Build the composed model and emit "
                                                       "ACD/CCD PlantUML files");
    std::string sy_out, sy_dump, sy_diagnostics;
    synth_cmd->add_option("--out", sy_out,
                          "Directory holding the two JSON artifacts; PlantUML goes here too")
        ->required();
    synth_cmd->add_option("--dump-relations", sy_dump,
                          "Write the derived communication relations as JSON");
    synth_cmd->add_option("--diagnostics", sy_diagnostics, "Diagnostics JSONL path");

    // ---- evaluate
    auto* ev = app.add_subcommand("evaluate", "Score a recovered model against a reference");
    std::string ev_recovered, ev_reference, ev_format = "text", ev_diagnostics;
    double ev_fail_under = -1.0;
    ev->add_option("--recovered", ev_recovered, "Recovered model file or directory")->required();
    ev->add_option("--reference", ev_reference, "Reference model file or directory")->required();
    ev->add_option("--format", ev_format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    ev->add_option("--fail-under", ev_fail_under,
                   "Exit nonzero when any level's macro F1 falls below this threshold");
    ev->add_option("--diagnostics", ev_diagnostics, "Diagnostics JSONL path");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);  // prints the message or help text
        return code == 0 ? 0 : pipeline::kExitInputError;
    }

    auto opt_path = [](const std::string& s) -> std::optional<std::string>
    { return s.empty() ? std::nullopt : std::optional<std::string>(s); };

    if (*run)
    {
        DiagnosticSink sink;
        pipeline::RecoveryJobConfig config;
        config.repo_root = run_repo;
        config.out_dir = run_out;
        for (const std::string& r : run_roots) config.roots.emplace_back(r);
        config.llm_enabled = !run_no_llm;
        if (!run_diagnostics.empty()) config.diagnostics_path = run_diagnostics;
        if (!run_dump_relations.empty()) config.dump_relations_path = run_dump_relations;
        config.endpoint = llm::EndpointConfig::from_env();
        return pipeline::run_pipeline(config, sink);
    }
    if (*extract_cmd)
    {
        DiagnosticSink sink;
        return guarded(
            [&]
            {
                pipeline::stage_extract(ex_repo, ex_out, sink);
                return pipeline::kExitOk;
            },
            sink, opt_path(ex_diagnostics));
    }
    if (*lg)
    {
        DiagnosticSink sink;
        return guarded(
            [&]
            {
                std::vector<fs::path> roots(lg_roots.begin(), lg_roots.end());
                std::optional<fs::path> inventory;
                if (!lg_inventory.empty()) inventory = lg_inventory;
                pipeline::stage_launch_graph(lg_repo, roots, inventory, lg_out, sink);
                return pipeline::kExitOk;
            },
            sink, opt_path(lg_diagnostics));
    }
    if (*synth_cmd)
    {
        DiagnosticSink sink;
        return guarded(
            [&]
            {
                std::optional<fs::path> dump;
                if (!sy_dump.empty()) dump = sy_dump;
                pipeline::stage_synthesize(sy_out, dump, sink);
                return pipeline::kExitOk;
            },
            sink, opt_path(sy_diagnostics));
    }
    if (*ev)
    {
        DiagnosticSink sink;
        return guarded(
            [&]
            {
                std::string report;
                std::optional<double> fail_under;
                if (ev_fail_under >= 0.0) fail_under = ev_fail_under;
                const int code = pipeline::stage_evaluate(ev_recovered, ev_reference,
                                                          ev_format, fail_under, report, sink);
                std::cout << report;
                return code;
            },
            sink, opt_path(ev_diagnostics));
    }
    return pipeline::kExitInputError;
}
