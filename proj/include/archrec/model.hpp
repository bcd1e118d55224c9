// Blueprint vocabulary: node classifiers, parts, ports, relations, and the
// canonical identifier scheme shared by every recovery stage.
// All types are immutable values after construction; share freely across readers.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace archrec
{

using ordered_json = nlohmann::ordered_json;

enum class PortKind
{
    publisher,
    subscriber,
    service_server,
    service_client,
};

enum class CompileType
{
    python,
    cpp,
};

enum class RelationKind
{
    topic,
    service,
};

const char* to_string(PortKind k);
const char* to_string(CompileType t);
const char* to_string(RelationKind k);
PortKind port_kind_from_string(const std::string& s);
CompileType compile_type_from_string(const std::string& s);
RelationKind relation_kind_from_string(const std::string& s);

// True for subscriber and service_server: the kinds that register a handler.
bool kind_takes_callback(PortKind k);

// A typed communication interface declared by a node class.
struct CommunicationPort
{
    PortKind kind = PortKind::publisher;
    std::string interface_type;  // <pkg>/(msg|srv)/<Type>
    std::string declared_name;   // raw topic/service name as written in source
    std::optional<std::string> callback_name;  // present iff kind takes a callback
    bool unresolved_name = false;  // declared_name is a non-literal expression

    // Structural equality used for set operations downstream; the unresolved
    // flag is bookkeeping and does not participate.
    friend bool operator==(const CommunicationPort& a, const CommunicationPort& b)
    {
        return a.kind == b.kind && a.interface_type == b.interface_type &&
               a.declared_name == b.declared_name && a.callback_name == b.callback_name;
    }
};

// Source-level definition of an atomic node: the smallest architectural unit.
struct AtomicRosNodeClassifier
{
    std::string id;          // arc_<n>
    std::string class_name;  // source-level class identity
    std::optional<std::string> node_name;  // absent when only set at launch time
    std::vector<std::string> header_file_paths;
    std::vector<std::string> source_file_paths;
    std::string description;
    CompileType compile_type = CompileType::python;
    std::optional<std::string> execution;  // executable / entry-point identity
    std::vector<CommunicationPort> ports;
};

struct Remapping
{
    std::string from_name;
    std::string to_name;

    friend bool operator==(const Remapping& a, const Remapping& b)
    {
        return a.from_name == b.from_name && a.to_name == b.to_name;
    }
};

// Launch-time instance typed by an atomic or composed classifier.
struct RosNodePart
{
    std::string instance_id;     // n<k> for nodes, lf<k> for included launch files
    std::string classifier_ref;  // id of the typing classifier
    std::string node_name;
    std::string ns;  // "" (global) or absolute "/..." after resolution
    std::vector<Remapping> remappings;
    std::string executable;
};

// Resolved system-level pub/sub or service link between node instances.
struct CommunicationRelation
{
    RelationKind kind = RelationKind::topic;
    std::string resolved_name;  // absolute, no '~'
    std::string interface_type;
    std::vector<std::string> producer_instance_ids;  // publishers / service servers
    std::vector<std::string> consumer_instance_ids;  // subscribers / service clients
};

// Subsystem induced by one launch-file composition scope.
struct ComposedRosNodeClassifier
{
    std::string id;    // crc_<n>
    std::string name;  // launch file name
    std::vector<RosNodePart> parts;
    std::vector<CommunicationRelation> relations;
};

// Lookup scope for classifier references during validation.
struct ClassifierIndex
{
    std::map<std::string, const AtomicRosNodeClassifier*> atomic;
    std::map<std::string, const ComposedRosNodeClassifier*> composed;

    void add(const AtomicRosNodeClassifier& c) { atomic[c.id] = &c; }
    void add(const ComposedRosNodeClassifier& c) { composed[c.id] = &c; }
    bool contains(const std::string& id) const
    {
        return atomic.count(id) > 0 || composed.count(id) > 0;
    }
};

// canonical_id("arc", 1) -> "arc_1" (classifier style),
// canonical_id("lf", 2) -> "lf2", canonical_id("n", 3) -> "n3" (instance style).
// Classifier prefixes ("arc", "crc", "urc") take the underscore form.
// Throws std::invalid_argument on an empty/non-alphabetic prefix or ordinal < 1.
std::string canonical_id(const std::string& prefix, int ordinal);

// One violated invariant, named by the offending element. Violations are data,
// not faults: validation itself never throws.
struct Violation
{
    std::string element;    // id or name of the offending element
    std::string invariant;  // which rule it breaks

    friend bool operator==(const Violation& a, const Violation& b)
    {
        return a.element == b.element && a.invariant == b.invariant;
    }
};

std::vector<Violation> validate_port(const CommunicationPort& port,
                                     const std::string& owner);
std::vector<Violation> validate_atomic(const AtomicRosNodeClassifier& classifier);

// Checks part references, id uniqueness, namespace form, relation well-formedness,
// and acyclic nesting of the composed hierarchy reachable from `root`.
// Pure: equal inputs yield equal violation lists.
std::vector<Violation> validate_model(const ComposedRosNodeClassifier& root,
                                      const ClassifierIndex& index);

// true when `interface_type` matches <pkg>/(msg|srv)/<Type>.
bool valid_interface_type(const std::string& interface_type);

// JSON conversion for the core types (round-trip stable).
ordered_json port_to_json(const CommunicationPort& p);
CommunicationPort port_from_json(const ordered_json& j);
ordered_json atomic_to_json(const AtomicRosNodeClassifier& c);
AtomicRosNodeClassifier atomic_from_json(const ordered_json& j);
ordered_json relation_to_json(const CommunicationRelation& r);
CommunicationRelation relation_from_json(const ordered_json& j);
ordered_json composed_to_json(const ComposedRosNodeClassifier& c);
ComposedRosNodeClassifier composed_from_json(const ordered_json& j);

bool operator==(const AtomicRosNodeClassifier& a, const AtomicRosNodeClassifier& b);
bool operator==(const RosNodePart& a, const RosNodePart& b);
bool operator==(const CommunicationRelation& a, const CommunicationRelation& b);
bool operator==(const ComposedRosNodeClassifier& a, const ComposedRosNodeClassifier& b);

}  // namespace archrec
