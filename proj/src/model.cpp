#include "archrec/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "archrec/textutil.hpp"

namespace archrec
{

const char* to_string(PortKind k)
{
    switch (k)
    {
        case PortKind::publisher: return "publisher";
        case PortKind::subscriber: return "subscriber";
        case PortKind::service_server: return "service_server";
        case PortKind::service_client: return "service_client";
    }
    return "publisher";
}

const char* to_string(CompileType t)
{
    return t == CompileType::python ? "python" : "cpp";
}

const char* to_string(RelationKind k)
{
    return k == RelationKind::topic ? "topic" : "service";
}

PortKind port_kind_from_string(const std::string& s)
{
    if (s == "publisher") return PortKind::publisher;
    if (s == "subscriber") return PortKind::subscriber;
    if (s == "service_server") return PortKind::service_server;
    if (s == "service_client") return PortKind::service_client;
    throw std::invalid_argument("unknown port kind: " + s);
}

CompileType compile_type_from_string(const std::string& s)
{
    if (s == "python") return CompileType::python;
    if (s == "cpp") return CompileType::cpp;
    throw std::invalid_argument("unknown compile type: " + s);
}

RelationKind relation_kind_from_string(const std::string& s)
{
    if (s == "topic") return RelationKind::topic;
    if (s == "service") return RelationKind::service;
    throw std::invalid_argument("unknown relation kind: " + s);
}

bool kind_takes_callback(PortKind k)
{
    return k == PortKind::subscriber || k == PortKind::service_server;
}

std::string canonical_id(const std::string& prefix, int ordinal)
{
    if (prefix.empty()) throw std::invalid_argument("canonical_id: empty prefix");
    for (char c : prefix)
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw std::invalid_argument("canonical_id: non-alphabetic prefix: " + prefix);
    if (ordinal < 1) throw std::invalid_argument("canonical_id: ordinal must be positive");
    const bool classifier_style = (prefix == "arc" || prefix == "crc" || prefix == "urc");
    return classifier_style ? prefix + "_" + std::to_string(ordinal)
                            : prefix + std::to_string(ordinal);
}

bool valid_interface_type(const std::string& t)
{
    const auto parts = split(t, '/');
    if (parts.size() != 3) return false;
    if (parts[1] != "msg" && parts[1] != "srv") return false;
    return is_identifier(parts[0]) && is_identifier(parts[2]);
}

std::vector<Violation> validate_port(const CommunicationPort& port, const std::string& owner)
{
    std::vector<Violation> out;
    if (!valid_interface_type(port.interface_type))
        out.push_back({owner, "port interface_type must match <pkg>/(msg|srv)/<Type>, got '" +
                                  port.interface_type + "'"});
    const bool needs_cb = kind_takes_callback(port.kind);
    if (needs_cb && !port.callback_name)
        out.push_back({owner, std::string("port of kind ") + to_string(port.kind) +
                                  " requires a callback_name"});
    if (!needs_cb && port.callback_name)
        out.push_back({owner, std::string("port of kind ") + to_string(port.kind) +
                                  " must not carry a callback_name"});
    return out;
}

std::vector<Violation> validate_atomic(const AtomicRosNodeClassifier& c)
{
    std::vector<Violation> out;
    if (c.id.empty()) out.push_back({c.class_name, "classifier id must be non-empty"});
    if (c.source_file_paths.empty())
        out.push_back({c.id, "source_file_paths must be non-empty"});
    if (c.compile_type == CompileType::python && !c.header_file_paths.empty())
        out.push_back({c.id, "python classifier must not list header files"});
    for (const CommunicationPort& p : c.ports)
    {
        auto v = validate_port(p, c.id);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

namespace
{

bool valid_namespace(const std::string& ns)
{
    if (ns.empty()) return true;  // global scope
    if (ns == "/") return true;
    if (ns.front() != '/') return false;
    if (ns.find("//") != std::string::npos) return false;
    if (ns.back() == '/') return false;
    return true;
}

// Detects a composed classifier that transitively contains itself.
bool reaches(const std::string& target, const ComposedRosNodeClassifier& from,
             const ClassifierIndex& index, std::set<std::string>& seen)
{
    if (!seen.insert(from.id).second) return false;
    for (const RosNodePart& part : from.parts)
    {
        if (part.classifier_ref == target) return true;
        auto it = index.composed.find(part.classifier_ref);
        if (it != index.composed.end() && reaches(target, *it->second, index, seen))
            return true;
    }
    return false;
}

void validate_composed(const ComposedRosNodeClassifier& c, const ClassifierIndex& index,
                       std::set<std::string>& visited, std::vector<Violation>& out)
{
    if (!visited.insert(c.id).second) return;

    std::set<std::string> part_ids;
    for (const RosNodePart& part : c.parts)
    {
        if (!part_ids.insert(part.instance_id).second)
            out.push_back({part.instance_id,
                           "part instance_id duplicated within classifier " + c.id});
        if (!index.contains(part.classifier_ref))
            out.push_back({part.instance_id,
                           "classifier_ref '" + part.classifier_ref + "' does not resolve"});
        if (!valid_namespace(part.ns))
            out.push_back({part.instance_id,
                           "namespace must be empty or begin with '/', got '" + part.ns + "'"});
    }

    std::set<std::string> self_seen;
    if (reaches(c.id, c, index, self_seen))
        out.push_back({c.id, "composed classifier contains itself transitively"});

    // Relation endpoints must reference parts reachable in the model.
    std::set<std::string> reachable_parts;
    std::set<std::string> walk_seen;
    std::vector<const ComposedRosNodeClassifier*> stack{&c};
    while (!stack.empty())
    {
        const ComposedRosNodeClassifier* cur = stack.back();
        stack.pop_back();
        if (!walk_seen.insert(cur->id).second) continue;
        for (const RosNodePart& part : cur->parts)
        {
            reachable_parts.insert(part.instance_id);
            auto it = index.composed.find(part.classifier_ref);
            if (it != index.composed.end()) stack.push_back(it->second);
        }
    }
    for (const CommunicationRelation& r : c.relations)
    {
        if (r.resolved_name.empty() || r.resolved_name.front() != '/' ||
            r.resolved_name.find('~') != std::string::npos)
            out.push_back({r.resolved_name.empty() ? c.id : r.resolved_name,
                           "relation resolved_name must be absolute and contain no '~'"});
        for (const auto* ids : {&r.producer_instance_ids, &r.consumer_instance_ids})
            for (const std::string& id : *ids)
                if (!reachable_parts.count(id))
                    out.push_back({r.resolved_name,
                                   "relation references unknown part '" + id + "'"});
    }

    for (const RosNodePart& part : c.parts)
    {
        auto it = index.composed.find(part.classifier_ref);
        if (it != index.composed.end()) validate_composed(*it->second, index, visited, out);
    }
}

std::optional<std::string> opt_string(const ordered_json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::string>();
}

}  // namespace

std::vector<Violation> validate_model(const ComposedRosNodeClassifier& root,
                                      const ClassifierIndex& index)
{
    std::vector<Violation> out;
    for (const auto& [id, atomic] : index.atomic)
    {
        auto v = validate_atomic(*atomic);
        out.insert(out.end(), v.begin(), v.end());
    }
    std::set<std::string> visited;
    validate_composed(root, index, visited, out);
    return out;
}

ordered_json port_to_json(const CommunicationPort& p)
{
    ordered_json j;
    j["kind"] = to_string(p.kind);
    j["interface_type"] = p.interface_type;
    j["declared_name"] = p.declared_name;
    if (p.callback_name) j["callback_name"] = *p.callback_name;
    if (p.unresolved_name) j["name_unresolved"] = true;
    return j;
}

CommunicationPort port_from_json(const ordered_json& j)
{
    CommunicationPort p;
    p.kind = port_kind_from_string(j.at("kind").get<std::string>());
    p.interface_type = j.at("interface_type").get<std::string>();
    p.declared_name = j.at("declared_name").get<std::string>();
    p.callback_name = opt_string(j, "callback_name");
    p.unresolved_name = j.value("name_unresolved", false);
    return p;
}

ordered_json atomic_to_json(const AtomicRosNodeClassifier& c)
{
    ordered_json j;
    j["id"] = c.id;
    j["class_name"] = c.class_name;
    j["node_name"] = c.node_name ? ordered_json(*c.node_name) : ordered_json(nullptr);
    j["header_file_paths"] = c.header_file_paths;
    j["source_file_paths"] = c.source_file_paths;
    j["description"] = c.description;
    j["compile_type"] = to_string(c.compile_type);
    j["execution"] = c.execution ? ordered_json(*c.execution) : ordered_json(nullptr);
    j["ports"] = ordered_json::array();
    for (const CommunicationPort& p : c.ports) j["ports"].push_back(port_to_json(p));
    return j;
}

AtomicRosNodeClassifier atomic_from_json(const ordered_json& j)
{
    AtomicRosNodeClassifier c;
    c.id = j.at("id").get<std::string>();
    c.class_name = j.at("class_name").get<std::string>();
    c.node_name = opt_string(j, "node_name");
    c.header_file_paths = j.at("header_file_paths").get<std::vector<std::string>>();
    c.source_file_paths = j.at("source_file_paths").get<std::vector<std::string>>();
    c.description = j.at("description").get<std::string>();
    c.compile_type = compile_type_from_string(j.at("compile_type").get<std::string>());
    c.execution = opt_string(j, "execution");
    if (j.contains("ports"))
        for (const auto& pj : j.at("ports")) c.ports.push_back(port_from_json(pj));
    return c;
}

ordered_json relation_to_json(const CommunicationRelation& r)
{
    ordered_json j;
    j["kind"] = to_string(r.kind);
    j["resolved_name"] = r.resolved_name;
    j["interface_type"] = r.interface_type;
    j["producers"] = r.producer_instance_ids;
    j["consumers"] = r.consumer_instance_ids;
    return j;
}

CommunicationRelation relation_from_json(const ordered_json& j)
{
    CommunicationRelation r;
    r.kind = relation_kind_from_string(j.at("kind").get<std::string>());
    r.resolved_name = j.at("resolved_name").get<std::string>();
    r.interface_type = j.at("interface_type").get<std::string>();
    r.producer_instance_ids = j.at("producers").get<std::vector<std::string>>();
    r.consumer_instance_ids = j.at("consumers").get<std::vector<std::string>>();
    return r;
}

ordered_json composed_to_json(const ComposedRosNodeClassifier& c)
{
    ordered_json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["parts"] = ordered_json::array();
    for (const RosNodePart& p : c.parts)
    {
        ordered_json pj;
        pj["instance_id"] = p.instance_id;
        pj["classifier_ref"] = p.classifier_ref;
        pj["node_name"] = p.node_name;
        pj["namespace"] = p.ns;
        pj["remappings"] = ordered_json::array();
        for (const Remapping& r : p.remappings)
            pj["remappings"].push_back({{"from", r.from_name}, {"to", r.to_name}});
        pj["executable"] = p.executable;
        j["parts"].push_back(std::move(pj));
    }
    j["relations"] = ordered_json::array();
    for (const CommunicationRelation& r : c.relations)
        j["relations"].push_back(relation_to_json(r));
    return j;
}

ComposedRosNodeClassifier composed_from_json(const ordered_json& j)
{
    ComposedRosNodeClassifier c;
    c.id = j.at("id").get<std::string>();
    c.name = j.at("name").get<std::string>();
    for (const auto& pj : j.at("parts"))
    {
        RosNodePart p;
        p.instance_id = pj.at("instance_id").get<std::string>();
        p.classifier_ref = pj.at("classifier_ref").get<std::string>();
        p.node_name = pj.at("node_name").get<std::string>();
        p.ns = pj.at("namespace").get<std::string>();
        if (pj.contains("remappings"))
            for (const auto& rj : pj.at("remappings"))
                p.remappings.push_back(
                    {rj.at("from").get<std::string>(), rj.at("to").get<std::string>()});
        p.executable = pj.at("executable").get<std::string>();
        c.parts.push_back(std::move(p));
    }
    for (const auto& rj : j.at("relations")) c.relations.push_back(relation_from_json(rj));
    return c;
}

bool operator==(const AtomicRosNodeClassifier& a, const AtomicRosNodeClassifier& b)
{
    return a.id == b.id && a.class_name == b.class_name && a.node_name == b.node_name &&
           a.header_file_paths == b.header_file_paths &&
           a.source_file_paths == b.source_file_paths && a.description == b.description &&
           a.compile_type == b.compile_type && a.execution == b.execution && a.ports == b.ports;
}

bool operator==(const RosNodePart& a, const RosNodePart& b)
{
    return a.instance_id == b.instance_id && a.classifier_ref == b.classifier_ref &&
           a.node_name == b.node_name && a.ns == b.ns && a.remappings == b.remappings &&
           a.executable == b.executable;
}

bool operator==(const CommunicationRelation& a, const CommunicationRelation& b)
{
    return a.kind == b.kind && a.resolved_name == b.resolved_name &&
           a.interface_type == b.interface_type &&
           a.producer_instance_ids == b.producer_instance_ids &&
           a.consumer_instance_ids == b.consumer_instance_ids;
}

bool operator==(const ComposedRosNodeClassifier& a, const ComposedRosNodeClassifier& b)
{
    return a.id == b.id && a.name == b.name && a.parts == b.parts && a.relations == b.relations;
}

}  // namespace archrec
