#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "archrec/errors.hpp"
#include "archrec/name_resolution.hpp"
#include "support/name_cases.hpp"

using namespace archrec;
using namespace archrec::names;

TEST_CASE("namespace normalization and joining")
{
    CHECK(normalize_namespace("") == "/");
    CHECK(normalize_namespace("/") == "/");
    CHECK(normalize_namespace("main") == "/main");
    CHECK(normalize_namespace("/main/") == "/main");
    CHECK(join_namespaces("/", "main") == "/main");
    CHECK(join_namespaces("/main", "sub") == "/main/sub");
    CHECK(join_namespaces("/main", "/override") == "/override");
    CHECK(join_namespaces("/main", "") == "/main");
    CHECK_THROWS_AS(normalize_namespace("a b"), AnalysisError);
    CHECK_THROWS_AS(normalize_namespace("a//b"), AnalysisError);
}

TEST_CASE("hand-verified resolution oracle table with idempotence")
{
    DiagnosticSink sink;
    REQUIRE(testsup::name_cases().size() >= 30);
    for (const auto& c : testsup::name_cases())
    {
        CAPTURE(c.raw);
        CAPTURE(c.ns);
        ResolvedName r = resolve_name(c.raw, c.ns, c.node);
        r = apply_remappings(r, c.remaps, c.ns, c.node, sink);
        CHECK(r.absolute == c.expected);

        // idempotence: resolving the absolute result changes nothing
        const ResolvedName again = resolve_name(r.absolute, c.ns, c.node);
        CHECK(again.absolute == r.absolute);
    }
    CHECK_FALSE(sink.has_errors());
}

TEST_CASE("illegal raw names are resolution errors")
{
    CHECK_THROWS_AS(resolve_name("", "ns", "n"), AnalysisError);
    CHECK_THROWS_AS(resolve_name("a b", "ns", "n"), AnalysisError);
    CHECK_THROWS_AS(resolve_name("a//b", "ns", "n"), AnalysisError);
    CHECK_THROWS_AS(resolve_name("a~b", "ns", "n"), AnalysisError);
    CHECK_THROWS_AS(resolve_name("~x", "ns", ""), AnalysisError);
}

TEST_CASE("malformed remapping rules are skipped with a diagnostic")
{
    DiagnosticSink sink;
    ResolvedName r = resolve_name("chatter", "main", "Tom");
    r = apply_remappings(r, {{"bad name", "x"}, {"chatter", "ok"}}, "main", "Tom", sink);
    CHECK(r.absolute == "/main/ok");
    CHECK(sink.count(Severity::warning) == 1);
}

namespace
{

AtomicRosNodeClassifier classifier_with(std::vector<CommunicationPort> ports)
{
    AtomicRosNodeClassifier c;
    c.id = "arc_1";
    c.class_name = "C";
    c.source_file_paths = {"f.py"};
    c.ports = std::move(ports);
    return c;
}

CommunicationPort pub(const std::string& topic, const std::string& type)
{
    return {PortKind::publisher, type, topic, std::nullopt};
}

CommunicationPort sub(const std::string& topic, const std::string& type)
{
    return {PortKind::subscriber, type, topic, std::string("on_msg")};
}

}  // namespace

TEST_CASE("publisher with no subscriber keeps a relation with an empty consumer list")
{
    DiagnosticSink sink;
    auto c = classifier_with({pub("status", "std_msgs/msg/String")});
    ResolutionInstance inst{"n1", "solo", "/", {}, &c};
    const auto relations = derive_communication_relations({inst}, sink);
    REQUIRE(relations.size() == 1);
    CHECK(relations[0].resolved_name == "/status");
    CHECK(relations[0].producer_instance_ids == std::vector<std::string>{"n1"});
    CHECK(relations[0].consumer_instance_ids.empty());
}

TEST_CASE("identical raw names in different namespaces never merge")
{
    DiagnosticSink sink;
    auto c = classifier_with({pub("status", "std_msgs/msg/String")});
    ResolutionInstance a{"n1", "Tom", "/main", {}, &c};
    ResolutionInstance b{"n2", "Tom", "/backup", {}, &c};
    const auto relations = derive_communication_relations({a, b}, sink);
    REQUIRE(relations.size() == 2);
    CHECK(relations[0].resolved_name == "/backup/status");
    CHECK(relations[1].resolved_name == "/main/status");
}

TEST_CASE("conservation: every resolvable port lands in exactly one relation")
{
    DiagnosticSink sink;
    auto talker = classifier_with(
        {pub("chatter", "std_msgs/msg/String"), pub("debug", "std_msgs/msg/String")});
    auto listener = classifier_with({sub("chatter", "std_msgs/msg/String")});
    listener.id = "arc_2";
    ResolutionInstance a{"n1", "talker", "/", {}, &talker};
    ResolutionInstance b{"n2", "listener", "/", {}, &listener};
    const auto relations = derive_communication_relations({a, b}, sink);

    size_t endpoint_count = 0;
    for (const auto& r : relations)
        endpoint_count += r.producer_instance_ids.size() + r.consumer_instance_ids.size();
    CHECK(endpoint_count == 3);  // one port each, one shared topic
    REQUIRE(relations.size() == 2);
    CHECK(relations[0].resolved_name == "/chatter");
    CHECK(relations[0].consumer_instance_ids == std::vector<std::string>{"n2"});
}

TEST_CASE("interface type conflicts keep one relation and a diagnostic")
{
    DiagnosticSink sink;
    auto a = classifier_with({pub("t", "pkg_b/msg/Beta")});
    auto b = classifier_with({sub("t", "pkg_a/msg/Alpha")});
    b.id = "arc_2";
    ResolutionInstance ia{"n1", "x", "/", {}, &a};
    ResolutionInstance ib{"n2", "y", "/", {}, &b};
    const auto relations = derive_communication_relations({ia, ib}, sink);
    REQUIRE(relations.size() == 1);
    CHECK(relations[0].interface_type == "pkg_a/msg/Alpha");  // lexicographically first
    CHECK(sink.count(Severity::warning) == 1);
}

TEST_CASE("unmatched instances and unresolved port names contribute nothing")
{
    DiagnosticSink sink;
    auto c = classifier_with({pub("ok", "std_msgs/msg/String")});
    c.ports.push_back({PortKind::publisher, "std_msgs/msg/String", "self.topic_expr",
                       std::nullopt, true});
    ResolutionInstance linked{"n1", "a", "/", {}, &c};
    ResolutionInstance unmatched{"n2", "b", "/", {}, nullptr};
    const auto relations = derive_communication_relations({linked, unmatched}, sink);
    REQUIRE(relations.size() == 1);
    CHECK(relations[0].resolved_name == "/ok");
    CHECK(sink.count(Severity::warning) == 1);  // the unresolved-name port
}

TEST_CASE("relations are sorted by kind then name, services after topics")
{
    DiagnosticSink sink;
    CommunicationPort server{PortKind::service_server, "std_srvs/srv/Trigger", "reset",
                             std::string("on_reset")};
    auto c = classifier_with({pub("zeta", "std_msgs/msg/String"), server,
                              pub("alpha", "std_msgs/msg/String")});
    ResolutionInstance inst{"n1", "x", "/", {}, &c};
    const auto relations = derive_communication_relations({inst}, sink);
    REQUIRE(relations.size() == 3);
    CHECK(relations[0].resolved_name == "/alpha");
    CHECK(relations[1].resolved_name == "/zeta");
    CHECK(relations[2].kind == RelationKind::service);
    CHECK(relations[2].resolved_name == "/reset");
}
