#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "archrec/model.hpp"

using namespace archrec;

TEST_CASE("canonical ids: classifier style underscores, instance style compact")
{
    CHECK(canonical_id("arc", 1) == "arc_1");
    CHECK(canonical_id("lf", 2) == "lf2");
    CHECK(canonical_id("n", 3) == "n3");
    CHECK(canonical_id("crc", 7) == "crc_7");
    CHECK_THROWS_AS(canonical_id("", 1), std::invalid_argument);
    CHECK_THROWS_AS(canonical_id("a1", 1), std::invalid_argument);
    CHECK_THROWS_AS(canonical_id("n", 0), std::invalid_argument);
}

TEST_CASE("interface type pattern")
{
    CHECK(valid_interface_type("sensor_msgs/msg/Image"));
    CHECK(valid_interface_type("std_srvs/srv/Trigger"));
    CHECK_FALSE(valid_interface_type("sensor_msgs/Image"));
    CHECK_FALSE(valid_interface_type("sensor_msgs/action/Follow"));
    CHECK_FALSE(valid_interface_type(""));
}

TEST_CASE("port invariants: callback presence is tied to the kind")
{
    CommunicationPort sub{PortKind::subscriber, "std_msgs/msg/String", "chatter",
                          std::string("on_msg")};
    CHECK(validate_port(sub, "c").empty());

    sub.callback_name.reset();
    CHECK(validate_port(sub, "c").size() == 1);

    CommunicationPort pub{PortKind::publisher, "std_msgs/msg/String", "chatter",
                          std::string("oops")};
    CHECK(validate_port(pub, "c").size() == 1);
}

namespace
{

AtomicRosNodeClassifier make_atomic(const std::string& id, const std::string& cls)
{
    AtomicRosNodeClassifier a;
    a.id = id;
    a.class_name = cls;
    a.source_file_paths = {"pkg/src/" + cls + ".py"};
    a.compile_type = CompileType::python;
    a.description = "d";
    return a;
}

RosNodePart make_part(const std::string& id, const std::string& ref, const std::string& name,
                      const std::string& ns)
{
    RosNodePart p;
    p.instance_id = id;
    p.classifier_ref = ref;
    p.node_name = name;
    p.ns = ns;
    p.executable = "exe";
    return p;
}

}  // namespace

TEST_CASE("validate_model finds dangling references")
{
    auto atomic = make_atomic("arc_1", "A");
    ComposedRosNodeClassifier root;
    root.id = "crc_1";
    root.name = "root.launch.py";
    root.parts = {make_part("n1", "arc_1", "a", "/"), make_part("n2", "arc_9", "b", "/x")};

    ClassifierIndex index;
    index.add(atomic);
    index.add(root);

    const auto violations = validate_model(root, index);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].element == "n2");
    CHECK(violations[0].invariant.find("arc_9") != std::string::npos);
}

TEST_CASE("validate_model flags self-containment as a cycle")
{
    ComposedRosNodeClassifier root;
    root.id = "crc_1";
    root.name = "loop";
    root.parts = {make_part("lf1", "crc_1", "loop", "/")};
    ClassifierIndex index;
    index.add(root);

    const auto violations = validate_model(root, index);
    REQUIRE_FALSE(violations.empty());
    bool cycle = false;
    for (const auto& v : violations)
        if (v.invariant.find("contains itself") != std::string::npos) cycle = true;
    CHECK(cycle);
}

TEST_CASE("well-formed two-part model validates cleanly and purely")
{
    auto a1 = make_atomic("arc_1", "A");
    auto a2 = make_atomic("arc_2", "B");
    ComposedRosNodeClassifier root;
    root.id = "crc_1";
    root.name = "sys";
    root.parts = {make_part("n1", "arc_1", "a", "/"), make_part("n2", "arc_2", "b", "/main")};
    CommunicationRelation rel;
    rel.kind = RelationKind::topic;
    rel.resolved_name = "/chatter";
    rel.interface_type = "std_msgs/msg/String";
    rel.producer_instance_ids = {"n1"};
    rel.consumer_instance_ids = {"n2"};
    root.relations = {rel};

    ClassifierIndex index;
    index.add(a1);
    index.add(a2);
    index.add(root);

    CHECK(validate_model(root, index).empty());
    CHECK(validate_model(root, index) == validate_model(root, index));
}

namespace
{

// Random well-formed models for the serialization round-trip property.
struct ModelGen
{
    std::mt19937 rng;
    explicit ModelGen(uint32_t seed) : rng(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    CommunicationPort port()
    {
        static const char* types[] = {"std_msgs/msg/String", "sensor_msgs/msg/Image",
                                      "std_srvs/srv/Trigger"};
        CommunicationPort p;
        const int k = pick(0, 3);
        p.kind = static_cast<PortKind>(k);
        p.interface_type = types[pick(0, 2)];
        p.declared_name = "topic_" + std::to_string(pick(0, 9));
        if (kind_takes_callback(p.kind)) p.callback_name = "cb_" + std::to_string(pick(0, 5));
        return p;
    }

    AtomicRosNodeClassifier atomic(int ordinal)
    {
        AtomicRosNodeClassifier a = make_atomic(canonical_id("arc", ordinal),
                                                "Class" + std::to_string(ordinal));
        if (pick(0, 1)) a.node_name = "node_" + std::to_string(ordinal);
        if (pick(0, 1)) a.execution = "exec_" + std::to_string(ordinal);
        const int nports = pick(0, 4);
        for (int i = 0; i < nports; ++i) a.ports.push_back(port());
        return a;
    }
};

}  // namespace

TEST_CASE("JSON round-trip: any validated model deserializes structurally equal")
{
    ModelGen gen(20240811);
    for (int iter = 0; iter < 40; ++iter)
    {
        std::vector<AtomicRosNodeClassifier> atomics;
        const int n = gen.pick(1, 5);
        for (int i = 1; i <= n; ++i) atomics.push_back(gen.atomic(i));

        ComposedRosNodeClassifier root;
        root.id = "crc_1";
        root.name = "root.launch.py";
        for (int i = 0; i < n; ++i)
        {
            RosNodePart p = make_part(canonical_id("n", i + 1), atomics[i].id,
                                      "inst" + std::to_string(i + 1),
                                      gen.pick(0, 1) ? "/" : "/scope");
            if (gen.pick(0, 1)) p.remappings.push_back({"a", "b"});
            root.parts.push_back(std::move(p));
        }

        ClassifierIndex index;
        for (const auto& a : atomics) index.add(a);
        index.add(root);
        REQUIRE(validate_model(root, index).empty());

        for (const auto& a : atomics)
        {
            const AtomicRosNodeClassifier back = atomic_from_json(atomic_to_json(a));
            CHECK(back == a);
        }
        const ComposedRosNodeClassifier back = composed_from_json(composed_to_json(root));
        CHECK(back == root);
    }
}
