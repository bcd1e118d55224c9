#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "archrec/errors.hpp"
#include "archrec/evaluation.hpp"
#include "archrec/plantuml_parse.hpp"

using namespace archrec;
using namespace archrec::eval;

TEST_CASE("metric formulas, including the documented 0/0 conventions")
{
    // 19 of 20 recovered: precision 1.0, recall 0.95, F1 by direct formula
    Metrics m = compute_metrics({19, 0, 1});
    CHECK(m.precision == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.recall == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(0.974358974358974).epsilon(1e-9));

    // both sides empty: vacuous agreement
    m = compute_metrics({0, 0, 0});
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);

    // nothing correct
    m = compute_metrics({0, 3, 2});
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);

    // one-sided zero denominators are not vacuous
    m = compute_metrics({0, 0, 2});
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
}

TEST_CASE("macro average is the unweighted mean over a level's kinds")
{
    std::map<ElementKind, Metrics> per_kind;
    for (ElementKind k : kinds_of(Level::acd)) per_kind[k] = {1.0, 1.0, 1.0};
    Metrics m = macro_average(per_kind, Level::acd);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);

    per_kind[ElementKind::arc_name] = {0.5, 1.0, 2.0 / 3.0};
    m = macro_average(per_kind, Level::acd);
    CHECK(m.precision == doctest::Approx((0.5 + 5.0) / 6.0));

    std::map<ElementKind, Metrics> single{{ElementKind::remapping, {0.25, 0.5, 1.0 / 3.0}}};
    m = macro_average(single, Level::ccd);
    CHECK(m.precision == doctest::Approx(0.25));
}

TEST_CASE("compare_models counts multiset intersections")
{
    ElementSets rec, ref;
    for (int i = 0; i < 20; ++i)
        ref.add(ElementKind::communication_relation, "rel_" + std::to_string(i));
    for (int i = 0; i < 19; ++i)
        rec.add(ElementKind::communication_relation, "rel_" + std::to_string(i));
    rec.add(ElementKind::arc_name, "Invented");
    rec.sort_all();
    ref.sort_all();

    auto counts = compare_models(rec, ref);
    CHECK(counts.at(ElementKind::communication_relation).tp == 19);
    CHECK(counts.at(ElementKind::communication_relation).fp == 0);
    CHECK(counts.at(ElementKind::communication_relation).fn == 1);
    CHECK(counts.at(ElementKind::arc_name).fp == 1);

    // identity
    counts = compare_models(ref, ref);
    CHECK(counts.at(ElementKind::communication_relation).fp == 0);
    CHECK(counts.at(ElementKind::communication_relation).fn == 0);

    // symmetry: swapping the models swaps fp and fn
    const auto forward = compare_models(rec, ref);
    const auto backward = compare_models(ref, rec);
    for (const auto& [kind, c] : forward)
    {
        CHECK(backward.at(kind).tp == c.tp);
        CHECK(backward.at(kind).fp == c.fn);
        CHECK(backward.at(kind).fn == c.fp);
    }
}

static const char* kSmallAcd = R"(@startuml
component "ExampleNode" <<AtomicRosNodeClassifier>> as arc_1 {
  node_name "example_node"
  port publisher "camera/rgb" : sensor_msgs/msg/Image
  port subscriber "camera/rgb" : sensor_msgs/msg/Image -> on_image
  port service_server "enable" : std_srvs/srv/SetBool -> on_enable
  port service_client "reset" : std_srvs/srv/Trigger
}
@enduml
)";

TEST_CASE("ACD parsing extracts the six element kinds")
{
    DiagnosticSink sink;
    const ElementSets sets = parse_plantuml_model(kSmallAcd, sink);
    CHECK(sets.elements.at(ElementKind::arc_name) == std::vector<std::string>{"ExampleNode"});
    CHECK(sets.elements.at(ElementKind::arc_stereotype) ==
          std::vector<std::string>{"ExampleNode|AtomicRosNodeClassifier"});
    CHECK(sets.elements.at(ElementKind::message_type).size() == 2);
    CHECK(sets.elements.at(ElementKind::callback_function_name) ==
          std::vector<std::string>{"ExampleNode|on_image"});
    CHECK(sets.elements.at(ElementKind::service_type).size() == 2);
    CHECK(sets.elements.at(ElementKind::service_function_name) ==
          std::vector<std::string>{"ExampleNode|on_enable"});
    CHECK_FALSE(sink.has_errors());
}

TEST_CASE("empty diagram body yields all-empty sets")
{
    DiagnosticSink sink;
    const ElementSets sets = parse_plantuml_model("@startuml\n@enduml\n", sink);
    for (Level l : {Level::acd, Level::ccd}) CHECK(sets.total(l) == 0);
}

TEST_CASE("line reordering never changes the canonical sets")
{
    const char* reordered = R"(@startuml
component "ExampleNode" <<AtomicRosNodeClassifier>> as zz {
  port service_client "reset" : std_srvs/srv/Trigger
  port service_server "enable" : std_srvs/srv/SetBool -> on_enable
  port subscriber "camera/rgb" : sensor_msgs/msg/Image -> on_image
  port publisher "camera/rgb" : sensor_msgs/msg/Image
  node_name "example_node"
}
@enduml
)";
    DiagnosticSink sink;
    CHECK(parse_plantuml_model(kSmallAcd, sink) == parse_plantuml_model(reordered, sink));
}

TEST_CASE("unrecognized lines become diagnostics, never silent drops")
{
    DiagnosticSink sink;
    parse_plantuml_model("@startuml\nskinparam monochrome true\n@enduml\n", sink);
    REQUIRE(sink.records().size() == 1);
    CHECK(sink.records()[0].message.find("unrecognized") != std::string::npos);
}

TEST_CASE("unbalanced structure is fatal with a line number")
{
    DiagnosticSink sink;
    const char* unbalanced = "@startuml\ncomponent \"X\" <<RosNodePart>> as p {\n@enduml\n";
    CHECK_THROWS_WITH_AS(parse_plantuml_model(unbalanced, sink),
                         doctest::Contains("line"), AnalysisError);
    CHECK_THROWS_AS(parse_plantuml_model("component \"X\"\n", sink), AnalysisError);
    CHECK_THROWS_AS(parse_plantuml_model("@startuml\n}\n@enduml\n", sink), AnalysisError);
}

static const char* kSmallCcd = R"(@startuml
component "root.launch.py" <<ComposedRosNodeClassifier>> as lf1 {
  component "Rob" <<RosNodePart>> as n1 {
    classifier "SensorNode"
    namespace "/"
    executable "sensor_exec"
  }
  component "child.launch.py" <<ComposedRosNodeClassifier>> as lf2 {
    component "Tom" <<RosNodePart>> as n2 {
      classifier "WorkerNode"
      namespace "/main"
      executable "worker_exec"
    }
  }
  component "Tom" <<RosNodePart>> as n3 {
    classifier "WorkerNode"
    namespace "/backup"
    executable "worker_exec"
    remap "status" -> "status_backup"
  }
  n1 --> n2, n3 : topic "/scan" : sensor_msgs/msg/LaserScan
}
@enduml
)";

TEST_CASE("adding a correct element never decreases tp or recall")
{
    std::mt19937 rng(99);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int iter = 0; iter < 50; ++iter)
    {
        ElementSets rec, ref;
        for (int i = 0, n = pick(1, 10); i < n; ++i)
            ref.add(ElementKind::arc_name, "e" + std::to_string(pick(0, 5)));
        for (int i = 0, n = pick(0, 10); i < n; ++i)
            rec.add(ElementKind::arc_name, "e" + std::to_string(pick(0, 5)));
        rec.sort_all();
        ref.sort_all();

        const auto before = compare_models(rec, ref).at(ElementKind::arc_name);
        const Metrics m_before = compute_metrics(before);

        // add one element drawn from the reference side
        ElementSets grown = rec;
        grown.add(ElementKind::arc_name, ref.elements.at(ElementKind::arc_name).front());
        grown.sort_all();
        const auto after = compare_models(grown, ref).at(ElementKind::arc_name);
        const Metrics m_after = compute_metrics(after);
        CHECK(after.tp >= before.tp);
        CHECK(m_after.recall >= m_before.recall);
    }
}

TEST_CASE("levels without elements are omitted from the report with a notice")
{
    DiagnosticSink sink;
    const ElementSets acd_only = parse_plantuml_model(kSmallAcd, sink);
    const EvaluationReport report = evaluate_sets(acd_only, acd_only);
    CHECK(report.acd.has_value());
    CHECK_FALSE(report.ccd.has_value());
    REQUIRE(report.notices.size() == 1);
    CHECK(report.notices[0].find("CCD omitted") != std::string::npos);
    const ordered_json j = report_to_json(report);
    CHECK(j.at("levels").contains("ACD"));
    CHECK_FALSE(j.at("levels").contains("CCD"));
}

TEST_CASE("CCD parsing: parts, namespaces, remaps, and qualified relations")
{
    DiagnosticSink sink;
    const ElementSets sets = parse_plantuml_model(kSmallCcd, sink);
    CHECK(sets.elements.at(ElementKind::composed_classifier_name) ==
          std::vector<std::string>{"child.launch.py", "root.launch.py"});
    CHECK(sets.elements.at(ElementKind::node_part_name) ==
          std::vector<std::string>{"Rob", "Tom", "Tom"});
    CHECK(sets.elements.at(ElementKind::node_part_namespace) ==
          std::vector<std::string>{"/backup|Tom", "/main|Tom", "/|Rob"});
    CHECK(sets.elements.at(ElementKind::node_part_classifier_ref) ==
          std::vector<std::string>{"/backup|Tom|WorkerNode", "/main|Tom|WorkerNode",
                                   "/|Rob|SensorNode"});
    CHECK(sets.elements.at(ElementKind::remapping) ==
          std::vector<std::string>{"/backup|Tom|status|status_backup"});
    // endpoints canonicalize to namespace-qualified part names, sorted
    CHECK(sets.elements.at(ElementKind::communication_relation) ==
          std::vector<std::string>{
              "topic|/scan|sensor_msgs/msg/LaserScan|/Rob|/backup/Tom,/main/Tom"});
}

TEST_CASE("random printable garbage never crashes the parser")
{
    std::mt19937 rng(31337);
    const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyz  \"\"<<>>{}():|/~-->@startuml\n@enduml\ncomponent port ";
    for (int iter = 0; iter < 200; ++iter)
    {
        std::string text = "@startuml\n";
        const int len = std::uniform_int_distribution<int>(0, 400)(rng);
        for (int i = 0; i < len; ++i)
            text += alphabet[std::uniform_int_distribution<size_t>(0, alphabet.size() - 1)(rng)];
        text += "\n@enduml\n";
        DiagnosticSink sink;
        try
        {
            parse_plantuml_model(text, sink);
        }
        catch (const AnalysisError&)
        {
            // unbalanced structure is a legitimate fatal outcome
        }
    }
}

TEST_CASE("connectors referencing unknown aliases are diagnosed, not dropped silently")
{
    const char* text = R"(@startuml
component "sys" <<ComposedRosNodeClassifier>> as s {
  component "a" <<RosNodePart>> as p1 {
    classifier "A"
    namespace "/"
  }
  p1 --> ghost : topic "/t" : pkg/msg/T
}
@enduml
)";
    DiagnosticSink sink;
    const ElementSets sets = parse_plantuml_model(text, sink);
    REQUIRE(sets.elements.at(ElementKind::communication_relation).size() == 1);
    bool diagnosed = false;
    for (const auto& d : sink.records())
        if (d.message.find("ghost") != std::string::npos) diagnosed = true;
    CHECK(diagnosed);
}

TEST_CASE("reference models with other aliases canonicalize to the same relations")
{
    const char* other_aliases = R"(@startuml
component "root.launch.py" <<ComposedRosNodeClassifier>> as A {
  component "Rob" <<RosNodePart>> as sensor {
    classifier "SensorNode"
    namespace "/"
  }
  component "Tom" <<RosNodePart>> as w1 {
    classifier "WorkerNode"
    namespace "/main"
  }
  component "Tom" <<RosNodePart>> as w2 {
    classifier "WorkerNode"
    namespace "/backup"
  }
  sensor --> w2, w1 : topic "/scan" : sensor_msgs/msg/LaserScan
}
@enduml
)";
    DiagnosticSink sink;
    const ElementSets sets = parse_plantuml_model(other_aliases, sink);
    CHECK(sets.elements.at(ElementKind::communication_relation) ==
          std::vector<std::string>{
              "topic|/scan|sensor_msgs/msg/LaserScan|/Rob|/backup/Tom,/main/Tom"});
}
