#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/name_resolution.hpp"
#include "archrec/plantuml_parse.hpp"
#include "archrec/synthesis.hpp"
#include "support/test_support.hpp"

using namespace archrec;
using namespace archrec::synth;

namespace
{

struct Chain
{
    extract::NodeInventory inventory;
    launch::LaunchDependencyDescription ldd;
    launch::InstanceLinks links;
    std::vector<CommunicationRelation> relations;
    ArchitectureModel model;
};

Chain run_chain(const fs::path& repo, const fs::path& root_launch, DiagnosticSink& sink)
{
    Chain c;
    c.inventory = extract::build_inventory(repo, sink);
    c.ldd = launch::build_launch_dependency_description({root_launch}, repo, sink);
    c.links = launch::link_instances_to_classifiers(c.ldd, c.inventory, sink);
    launch::apply_links(c.ldd, c.inventory, c.links);

    std::vector<names::ResolutionInstance> instances;
    for (const auto& inst : c.ldd.node_instances)
    {
        names::ResolutionInstance r;
        r.instance_id = inst.id;
        r.node_name = inst.node_name;
        r.ns = inst.ns;
        r.remappings = inst.remappings;
        auto it = c.links.classifier_of.find(inst.id);
        if (it != c.links.classifier_of.end()) r.classifier = c.inventory.find(it->second);
        instances.push_back(std::move(r));
    }
    c.relations = names::derive_communication_relations(instances, sink);
    c.model = build_composed_model(c.ldd, c.links, c.inventory, c.relations, sink);
    return c;
}

}  // namespace

TEST_CASE("nested workspace composes a two-level model with scoped relations")
{
    DiagnosticSink sink;
    const fs::path repo = testsup::fixture("nested_ws");
    Chain c = run_chain(repo, repo / "nest_demo" / "launch" / "root.launch.py", sink);

    CHECK(c.model.root_composed_id == "crc_1");
    REQUIRE(c.model.composed_classifiers.size() == 2);
    const ComposedRosNodeClassifier& root = c.model.composed_classifiers[0];
    const ComposedRosNodeClassifier& child = c.model.composed_classifiers[1];
    CHECK(root.name == "root.launch.py");
    CHECK(child.name == "child.launch.py");

    // parts: n1, n3 typed by atomics, plus lf2 typed by the child composed classifier
    REQUIRE(root.parts.size() == 3);
    CHECK(root.parts[0].instance_id == "n1");
    CHECK(root.parts[1].instance_id == "n3");
    CHECK(root.parts[2].instance_id == "lf2");
    CHECK(root.parts[2].classifier_ref == "crc_2");

    // relation attachment: /main names live inside the child scope
    REQUIRE(c.relations.size() == 5);
    std::vector<std::string> child_names, root_names;
    for (const auto& r : child.relations) child_names.push_back(r.resolved_name);
    for (const auto& r : root.relations) root_names.push_back(r.resolved_name);
    CHECK(child_names == std::vector<std::string>{"/main/scan", "/main/status"});
    CHECK(root_names ==
          std::vector<std::string>{"/backup/scan", "/backup/status_backup", "/scan"});

    CHECK(validate_architecture(c.model).empty());

    // hierarchy soundness: nesting depth in the CCD equals include-chain depth
    const std::string ccd = emit_ccd(c.model);
    CHECK(ccd.find("  component \"child.launch.py\" <<ComposedRosNodeClassifier>> as crc_2 {") !=
          std::string::npos);
    CHECK(ccd.find("\ncomponent \"root.launch.py\"") != std::string::npos);

    // the remapped part keeps its remapping visible
    CHECK(ccd.find("remap \"status\" -> \"status_backup\"") != std::string::npos);
}

TEST_CASE("ACD emission: ports with callbacks, empty port section for inert classes")
{
    AtomicRosNodeClassifier c;
    c.id = "arc_1";
    c.class_name = "ExampleNode";
    c.node_name = "example_node";
    c.execution = "example";
    c.source_file_paths = {"pkg/example.py"};
    c.ports = {{PortKind::publisher, "sensor_msgs/msg/Image", "camera/rgb", std::nullopt},
               {PortKind::subscriber, "sensor_msgs/msg/Image", "camera/rgb",
                std::string("on_image")}};

    const std::string acd = emit_acd(c);
    CHECK(acd.find("component \"ExampleNode\" <<AtomicRosNodeClassifier>> as arc_1 {") !=
          std::string::npos);
    CHECK(acd.find("port publisher \"camera/rgb\" : sensor_msgs/msg/Image\n") !=
          std::string::npos);
    CHECK(acd.find("port subscriber \"camera/rgb\" : sensor_msgs/msg/Image -> on_image\n") !=
          std::string::npos);

    AtomicRosNodeClassifier inert;
    inert.id = "arc_2";
    inert.class_name = "InertNode";
    inert.source_file_paths = {"pkg/inert.py"};
    const std::string empty_acd = emit_acd(inert);
    CHECK(empty_acd.find("port") == std::string::npos);

    DiagnosticSink sink;
    const auto sets = eval::parse_plantuml_model(empty_acd, sink);
    CHECK(sets.elements.at(eval::ElementKind::arc_name) ==
          std::vector<std::string>{"InertNode"});
    CHECK(sets.elements.count(eval::ElementKind::message_type) == 0);
}

TEST_CASE("emitted ACD parses back to the classifier's canonical element set")
{
    DiagnosticSink sink;
    const fs::path repo = testsup::fixture("sortcell");
    const auto inventory = extract::build_inventory(repo, sink);

    for (const auto& pkg : inventory.packages)
        for (const auto& c : pkg.classifiers)
        {
            const auto sets = eval::parse_plantuml_model(emit_acd(c), sink);
            CHECK(sets.elements.at(eval::ElementKind::arc_name) ==
                  std::vector<std::string>{c.class_name});

            size_t expected_ports = 0;
            for (const auto& p : c.ports)
                if (p.kind == PortKind::publisher || p.kind == PortKind::subscriber)
                    ++expected_ports;
            const auto it = sets.elements.find(eval::ElementKind::message_type);
            CHECK((it == sets.elements.end() ? 0 : it->second.size()) == expected_ports);
        }
    CHECK_FALSE(sink.has_errors());
}

TEST_CASE("unmatched instances type their parts with a visible placeholder")
{
    DiagnosticSink sink;
    launch::LaunchDependencyDescription ldd;
    launch::LaunchFileEntry e;
    e.id = "lf1";
    e.type = "solo.launch.py";
    e.nodes = {"n1"};
    ldd.list_launch_file.push_back(e);
    launch::NodeInstanceEntry n;
    n.id = "n1";
    n.exec_name = "mystery_exec";
    n.node_name = "mystery";
    n.ns = "/";
    ldd.node_instances.push_back(n);
    ldd.roots = {"lf1"};

    extract::NodeInventory empty_inv;
    launch::InstanceLinks no_links;
    const auto model = build_composed_model(ldd, no_links, empty_inv, {}, sink);
    REQUIRE(model.placeholder_classifiers.size() == 1);
    CHECK(model.placeholder_classifiers[0].class_name == "mystery_exec");

    const std::string ccd = emit_ccd(model);
    CHECK(ccd.find("classifier \"mystery_exec\" <<UnresolvedClassifier>>") !=
          std::string::npos);
}

TEST_CASE("empty description cannot be synthesized")
{
    DiagnosticSink sink;
    launch::LaunchDependencyDescription empty;
    extract::NodeInventory inv;
    CHECK_THROWS_AS(build_composed_model(empty, {}, inv, {}, sink), AnalysisError);
}

TEST_CASE("relations spanning sibling subsystems attach to the common ancestor")
{
    DiagnosticSink sink;
    const auto dir = testsup::fresh_dir("lca_span");
    write_file(dir / "pkg" / "package.xml",
               "<package><name>pkg</name><export><build_type>ament_python</build_type>"
               "</export></package>\n");
    write_file(dir / "pkg" / "setup.py",
               "from setuptools import setup\n"
               "setup(name='pkg', entry_points={'console_scripts': ["
               "'talk = pkg.talk:main', 'listen = pkg.listen:main']})\n");
    write_file(dir / "pkg" / "pkg" / "talk.py", R"(
import rclpy
from rclpy.node import Node
from std_msgs.msg import String


class TalkNode(Node):
    def __init__(self):
        super().__init__('talk')
        self.pub = self.create_publisher(String, '/shared/bus', 10)


def main():
    rclpy.spin(TalkNode())
)");
    write_file(dir / "pkg" / "pkg" / "listen.py", R"(
import rclpy
from rclpy.node import Node
from std_msgs.msg import String


class ListenNode(Node):
    def __init__(self):
        super().__init__('listen')
        self.sub = self.create_subscription(String, '/shared/bus', self.on_msg, 10)

    def on_msg(self, msg):
        pass


def main():
    rclpy.spin(ListenNode())
)");
    // two sibling subsystems under one umbrella launch file
    write_file(dir / "pkg" / "launch" / "left.launch.xml",
               "<launch>\n  <node pkg=\"pkg\" exec=\"talk\" name=\"talk\"/>\n</launch>\n");
    write_file(dir / "pkg" / "launch" / "right.launch.xml",
               "<launch>\n  <node pkg=\"pkg\" exec=\"listen\" name=\"listen\"/>\n</launch>\n");
    write_file(dir / "pkg" / "launch" / "umbrella.launch.xml",
               "<launch>\n  <include file=\"left.launch.xml\"/>\n"
               "  <include file=\"right.launch.xml\"/>\n</launch>\n");

    Chain c = run_chain(dir, dir / "pkg" / "launch" / "umbrella.launch.xml", sink);
    REQUIRE(c.relations.size() == 1);
    CHECK(c.relations[0].resolved_name == "/shared/bus");

    REQUIRE(c.model.composed_classifiers.size() == 3);
    const auto* umbrella = c.model.find_composed("crc_1");
    REQUIRE(umbrella != nullptr);
    CHECK(umbrella->name == "umbrella.launch.xml");
    REQUIRE(umbrella->relations.size() == 1);  // nearest common ancestor of n1 and n2
    CHECK(c.model.composed_classifiers[1].relations.empty());
    CHECK(c.model.composed_classifiers[2].relations.empty());

    // the emitted connector references parts nested in different child blocks
    const std::string ccd = emit_ccd(c.model);
    CHECK(ccd.find("n1 --> n2 : topic \"/shared/bus\" : std_msgs/msg/String") !=
          std::string::npos);
}

TEST_CASE("multiple root launch files compose under a synthetic system subsystem")
{
    DiagnosticSink sink;
    const auto dir = testsup::fresh_dir("multi_root");
    write_file(dir / "one.launch.xml",
               "<launch>\n  <node pkg=\"p\" exec=\"a\" name=\"a\"/>\n</launch>\n");
    write_file(dir / "two.launch.xml",
               "<launch>\n  <node pkg=\"p\" exec=\"b\" name=\"b\"/>\n</launch>\n");
    const auto ldd = launch::build_launch_dependency_description(
        {dir / "one.launch.xml", dir / "two.launch.xml"}, dir, sink);
    REQUIRE(ldd.roots.size() == 2);

    extract::NodeInventory inv;
    const auto model = build_composed_model(ldd, {}, inv, {}, sink);
    REQUIRE(model.composed_classifiers.size() == 3);
    const auto* root = model.find_composed(model.root_composed_id);
    REQUIRE(root != nullptr);
    CHECK(root->name == "system");
    CHECK(root->parts.size() == 2);
    CHECK(validate_architecture(model).empty());
}
