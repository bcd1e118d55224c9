#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include <json.hpp>

#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/pipeline.hpp"
#include "support/test_support.hpp"

using namespace archrec;
using namespace archrec::pipeline;

namespace
{

std::map<std::string, std::string> artifact_bytes(const fs::path& out_dir)
{
    std::map<std::string, std::string> files;
    for (const fs::path& p : list_files(out_dir, [](const fs::path&) { return true; }))
        files[repo_relative(out_dir, p)] = read_file(p);
    return files;
}

RecoveryJobConfig offline_config(const fs::path& repo, const fs::path& out)
{
    RecoveryJobConfig config;
    config.repo_root = repo;
    config.out_dir = out;
    config.llm_enabled = false;
    config.diagnostics_path = out / "diagnostics.jsonl";
    return config;
}

}  // namespace

TEST_CASE("full pipeline on the main fixture: manifest lists 13 artifacts")
{
    DiagnosticSink sink;
    const auto out = testsup::fresh_dir("pipe_main");
    const int code = run_pipeline(offline_config(testsup::fixture("sortcell"), out), sink);
    REQUIRE(code == kExitOk);

    const auto manifest = nlohmann::ordered_json::parse(read_file(out / kManifestFile));
    CHECK(manifest.at("status") == "ok");
    CHECK(manifest.at("failed_stage").is_null());
    REQUIRE(manifest.at("artifacts").size() == 13);  // 2 json + 10 acd + 1 ccd

    size_t acd = 0, ccd = 0, json_artifacts = 0;
    for (const auto& a : manifest.at("artifacts"))
    {
        const std::string path = a.at("path").get<std::string>();
        CHECK(a.at("sha256").get<std::string>().size() == 64);
        CHECK(fs::exists(out / path));
        if (path.starts_with("acd/")) ++acd;
        if (path.starts_with("ccd/")) ++ccd;
        if (path.ends_with(".json")) ++json_artifacts;
    }
    CHECK(acd == 10);
    CHECK(ccd == 1);
    CHECK(json_artifacts == 2);
}

TEST_CASE("rerunning the pipeline reproduces byte-identical artifacts and digests")
{
    DiagnosticSink s1, s2;
    const auto out1 = testsup::fresh_dir("pipe_det1");
    const auto out2 = testsup::fresh_dir("pipe_det2");
    REQUIRE(run_pipeline(offline_config(testsup::fixture("sortcell"), out1), s1) == kExitOk);
    REQUIRE(run_pipeline(offline_config(testsup::fixture("sortcell"), out2), s2) == kExitOk);

    CHECK(read_file(out1 / kManifestFile) == read_file(out2 / kManifestFile));
    auto a = artifact_bytes(out1);
    auto b = artifact_bytes(out2);
    a.erase("diagnostics.jsonl");
    b.erase("diagnostics.jsonl");
    CHECK(a == b);
}

TEST_CASE("the analyzed repository is never written to")
{
    DiagnosticSink sink;
    const auto dir = testsup::fresh_dir("pipe_readonly");
    fs::copy(testsup::fixture("sortcell"), dir / "repo", fs::copy_options::recursive);
    std::set<std::string> before;
    for (const fs::path& p : list_files(dir / "repo", [](const fs::path&) { return true; }))
        before.insert(p.generic_string());

    REQUIRE(run_pipeline(offline_config(dir / "repo", dir / "out"), sink) == kExitOk);

    std::set<std::string> after;
    for (const fs::path& p : list_files(dir / "repo", [](const fs::path&) { return true; }))
        after.insert(p.generic_string());
    CHECK(before == after);
}

TEST_CASE("nonexistent repository path: input error, no artifacts")
{
    DiagnosticSink sink;
    const auto out = testsup::fresh_dir("pipe_badrepo");
    RecoveryJobConfig config = offline_config("no/such/repo", out / "inner");
    config.diagnostics_path.reset();
    const int code = run_pipeline(config, sink);
    CHECK(code == kExitInputError);
    CHECK_FALSE(fs::exists(out / "inner" / kManifestFile));
}

TEST_CASE("chained single-stage runs reproduce the pipeline byte-for-byte")
{
    DiagnosticSink sink;
    const auto piped = testsup::fresh_dir("pipe_whole");
    RecoveryJobConfig config = offline_config(testsup::fixture("sortcell"), piped);
    config.diagnostics_path.reset();
    config.dump_relations_path = piped / kRelationsFile;
    REQUIRE(run_pipeline(config, sink) == kExitOk);

    const auto staged = testsup::fresh_dir("pipe_staged");
    DiagnosticSink s2;
    stage_extract(testsup::fixture("sortcell"), staged, s2);
    stage_launch_graph(testsup::fixture("sortcell"), {}, staged / kInventoryFile, staged, s2);
    stage_synthesize(staged, staged / kRelationsFile, s2);

    auto from_pipeline = artifact_bytes(piped);
    auto from_stages = artifact_bytes(staged);
    from_pipeline.erase(kManifestFile);  // single stages do not write a manifest
    CHECK(from_pipeline == from_stages);

    // relations dump exists and holds the twenty topic relations plus two services
    const auto relations =
        nlohmann::ordered_json::parse(from_stages.at(kRelationsFile)).at("relations");
    size_t topics = 0, services = 0;
    for (const auto& r : relations)
        (r.at("kind") == "topic" ? topics : services) += 1;
    CHECK(topics == 20);
    CHECK(services == 2);
}

TEST_CASE("synthesize without upstream artifacts names the producing subcommand")
{
    DiagnosticSink sink;
    const auto out = testsup::fresh_dir("pipe_missing");
    CHECK_THROWS_WITH_AS(stage_synthesize(out, std::nullopt, sink),
                         doctest::Contains("extract"), InputError);
    stage_extract(testsup::fixture("sortcell"), out, sink);
    CHECK_THROWS_WITH_AS(stage_synthesize(out, std::nullopt, sink),
                         doctest::Contains("launch-graph"), InputError);
}

TEST_CASE("failed stages keep earlier artifacts and mark the stage in the manifest")
{
    DiagnosticSink sink;
    const auto dir = testsup::fresh_dir("pipe_failing");
    // a repo whose only launch file has a duplicate (name, namespace) pair
    write_file(dir / "repo" / "pkg" / "package.xml",
               "<package><name>pkg</name><export><build_type>ament_python</build_type>"
               "</export></package>\n");
    write_file(dir / "repo" / "pkg" / "launch" / "dup.launch.xml",
               "<launch>\n  <node pkg=\"pkg\" exec=\"a\" name=\"same\"/>\n"
               "  <node pkg=\"pkg\" exec=\"b\" name=\"same\"/>\n</launch>\n");
    RecoveryJobConfig config = offline_config(dir / "repo", dir / "out");
    config.diagnostics_path.reset();
    const int code = run_pipeline(config, sink);
    CHECK(code == kExitAnalysisError);
    const auto manifest = nlohmann::ordered_json::parse(read_file(dir / "out" / kManifestFile));
    CHECK(manifest.at("status") == "failed");
    CHECK_FALSE(manifest.at("failed_stage").is_null());
}

TEST_CASE("evaluate stage: identical models score 1.0 and respect --fail-under")
{
    DiagnosticSink sink;
    const auto out = testsup::fresh_dir("pipe_eval");
    RecoveryJobConfig config = offline_config(testsup::fixture("sortcell"), out);
    config.diagnostics_path.reset();
    REQUIRE(run_pipeline(config, sink) == kExitOk);

    std::string report;
    int code = stage_evaluate(out / "acd", out / "acd", "json", 0.99, report, sink);
    CHECK(code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(report);
    CHECK(j.at("levels").at("ACD").at("macro").at("f1") == 1.0);
    CHECK(j.at("schema_version") == 1);

    // recovered vs the bundled reference, whole directories
    report.clear();
    code = stage_evaluate(out, testsup::fixture("reference") / "sortcell", "text", 0.999,
                          report, sink);
    CHECK(code == kExitOk);
    CHECK(report.find("macro") != std::string::npos);

    // threshold failure path
    const auto scratch = testsup::fresh_dir("pipe_eval_bad");
    write_file(scratch / "bad.puml",
               "@startuml\ncomponent \"Wrong\" <<AtomicRosNodeClassifier>> as x {\n}\n@enduml\n");
    code = stage_evaluate(scratch / "bad.puml", out / "acd", "text", 0.5, report, sink);
    CHECK(code == kExitThresholdFailure);
}
