#include "archrec/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "archrec/errors.hpp"
#include "archrec/textutil.hpp"

namespace archrec::synth
{

ClassifierIndex ArchitectureModel::index() const
{
    ClassifierIndex idx;
    for (const AtomicRosNodeClassifier& c : atomic_classifiers) idx.add(c);
    for (const AtomicRosNodeClassifier& c : placeholder_classifiers) idx.add(c);
    for (const ComposedRosNodeClassifier& c : composed_classifiers) idx.add(c);
    return idx;
}

const ComposedRosNodeClassifier* ArchitectureModel::find_composed(const std::string& id) const
{
    for (const ComposedRosNodeClassifier& c : composed_classifiers)
        if (c.id == id) return &c;
    return nullptr;
}

bool ArchitectureModel::is_placeholder(const std::string& classifier_id) const
{
    for (const AtomicRosNodeClassifier& c : placeholder_classifiers)
        if (c.id == classifier_id) return true;
    return false;
}

namespace
{

// Owning entry of every instance, parent of every entry, and per-entry base
// namespace (root entries are global scope).
struct Tree
{
    std::map<std::string, std::string> owner_of_instance;
    std::map<std::string, std::string> parent_of_entry;
    std::map<std::string, std::string> base_ns;
    std::map<std::string, int> depth;
};

Tree build_tree(const launch::LaunchDependencyDescription& ldd)
{
    Tree t;
    for (const launch::LaunchFileEntry& e : ldd.list_launch_file)
    {
        for (const std::string& n : e.nodes) t.owner_of_instance[n] = e.id;
        for (const std::string& c : e.included_launch_files) t.parent_of_entry[c] = e.id;
    }
    // scope of a member inside its owner, if listed; owner base otherwise
    auto scope_in_owner = [&](const launch::LaunchFileEntry& owner,
                              const std::string& member) -> std::optional<std::string>
    {
        for (const auto& [scope, ids] : owner.namespace_scopes)
            if (std::find(ids.begin(), ids.end(), member) != ids.end()) return scope;
        return std::nullopt;
    };
    // compute base namespaces and depths top-down
    std::function<void(const launch::LaunchFileEntry&, const std::string&, int)> assign =
        [&](const launch::LaunchFileEntry& e, const std::string& base, int depth)
    {
        t.base_ns[e.id] = base;
        t.depth[e.id] = depth;
        for (const std::string& child_id : e.included_launch_files)
        {
            const launch::LaunchFileEntry* child = ldd.find_entry(child_id);
            if (!child) continue;
            const auto scope = scope_in_owner(e, child_id);
            assign(*child, scope.value_or(base), depth + 1);
        }
    };
    for (const std::string& root : ldd.roots)
        if (const launch::LaunchFileEntry* e = ldd.find_entry(root)) assign(*e, "/", 0);
    return t;
}

std::string puml_quote(const std::string& s) { return "\"" + s + "\""; }

void emit_part_block(std::string& out, const std::string& indent, const RosNodePart& part,
                     const ArchitectureModel& model)
{
    out += indent + "component " + puml_quote(part.node_name) + " <<RosNodePart>> as " +
           part.instance_id + " {\n";
    const std::string inner = indent + "  ";
    std::string classifier_name = part.classifier_ref;
    bool unresolved = model.is_placeholder(part.classifier_ref);
    for (const AtomicRosNodeClassifier& c : model.atomic_classifiers)
        if (c.id == part.classifier_ref) classifier_name = c.class_name;
    for (const AtomicRosNodeClassifier& c : model.placeholder_classifiers)
        if (c.id == part.classifier_ref) classifier_name = c.class_name;
    out += inner + "classifier " + puml_quote(classifier_name);
    if (unresolved) out += " <<UnresolvedClassifier>>";
    out += "\n";
    out += inner + "namespace " + puml_quote(part.ns.empty() ? "/" : part.ns) + "\n";
    if (!part.executable.empty()) out += inner + "executable " + puml_quote(part.executable) + "\n";
    for (const Remapping& r : part.remappings)
        out += inner + "remap " + puml_quote(r.from_name) + " -> " + puml_quote(r.to_name) + "\n";
    out += indent + "}\n";
}

void emit_composed_block(std::string& out, const std::string& indent,
                         const ComposedRosNodeClassifier& composed,
                         const ArchitectureModel& model)
{
    out += indent + "component " + puml_quote(composed.name) +
           " <<ComposedRosNodeClassifier>> as " + composed.id + " {\n";
    const std::string inner = indent + "  ";
    for (const RosNodePart& part : composed.parts)
    {
        if (const ComposedRosNodeClassifier* child = model.find_composed(part.classifier_ref))
            emit_composed_block(out, inner, *child, model);
        else
            emit_part_block(out, inner, part, model);
    }
    for (const CommunicationRelation& r : composed.relations)
    {
        out += inner + join(r.producer_instance_ids, ", ") + " --> " +
               join(r.consumer_instance_ids, ", ") + " : " + to_string(r.kind) + " " +
               puml_quote(r.resolved_name) + " : " + r.interface_type + "\n";
    }
    out += indent + "}\n";
}

}  // namespace

ArchitectureModel build_composed_model(const launch::LaunchDependencyDescription& ldd,
                                       const launch::InstanceLinks& links,
                                       const extract::NodeInventory& inventory,
                                       const std::vector<CommunicationRelation>& relations,
                                       DiagnosticSink& sink)
{
    if (ldd.roots.empty() || ldd.list_launch_file.empty())
        throw AnalysisError("launch dependency description has no root launch file");

    ArchitectureModel model;
    for (const auto& pkg : inventory.packages)
        for (const AtomicRosNodeClassifier& c : pkg.classifiers)
            model.atomic_classifiers.push_back(c);

    // composed classifier ids follow entry order (root entry first in DFS order)
    std::map<std::string, std::string> crc_of_entry;
    int ordinal = 1;
    for (const launch::LaunchFileEntry& e : ldd.list_launch_file)
        crc_of_entry[e.id] = canonical_id("crc", ordinal++);

    // placeholder classifiers for unmatched executables, one per distinct name
    std::map<std::string, std::string> placeholder_of_exec;
    int placeholder_ordinal = 1;
    auto placeholder_for = [&](const std::string& exec_name) -> std::string
    {
        auto it = placeholder_of_exec.find(exec_name);
        if (it != placeholder_of_exec.end()) return it->second;
        AtomicRosNodeClassifier p;
        p.id = canonical_id("urc", placeholder_ordinal++);
        p.class_name = exec_name.empty() ? "(unknown)" : exec_name;
        p.description = "Unresolved classifier for executable '" + exec_name + "'.";
        p.compile_type = CompileType::python;
        p.source_file_paths = {"(unresolved)"};
        model.placeholder_classifiers.push_back(std::move(p));
        placeholder_of_exec[exec_name] = model.placeholder_classifiers.back().id;
        return model.placeholder_classifiers.back().id;
    };

    const Tree tree = build_tree(ldd);

    for (const launch::LaunchFileEntry& e : ldd.list_launch_file)
    {
        ComposedRosNodeClassifier composed;
        composed.id = crc_of_entry.at(e.id);
        composed.name = e.type;

        // node parts in declaration order, then included subsystems in declaration order
        std::vector<std::string> members = e.nodes;
        members.insert(members.end(), e.included_launch_files.begin(),
                       e.included_launch_files.end());

        for (const std::string& member : members)
        {
            if (const launch::NodeInstanceEntry* inst = ldd.find_instance(member))
            {
                RosNodePart part;
                part.instance_id = inst->id;
                part.node_name = inst->node_name;
                part.ns = inst->ns;
                part.remappings = inst->remappings;
                part.executable = inst->exec_name;
                auto it = links.classifier_of.find(inst->id);
                if (it != links.classifier_of.end())
                {
                    part.classifier_ref = it->second;
                }
                else
                {
                    part.classifier_ref = placeholder_for(inst->exec_name);
                    sink.warning(inst->id, "part typed by placeholder classifier " +
                                               part.classifier_ref);
                }
                composed.parts.push_back(std::move(part));
            }
            else if (const launch::LaunchFileEntry* child = ldd.find_entry(member))
            {
                RosNodePart part;
                part.instance_id = child->id;
                part.classifier_ref = crc_of_entry.at(child->id);
                part.node_name = child->type;
                auto base = tree.base_ns.find(child->id);
                part.ns = base != tree.base_ns.end() ? base->second : "/";
                composed.parts.push_back(std::move(part));
            }
        }
        model.composed_classifiers.push_back(std::move(composed));
    }

    // attach each relation to the lowest composed classifier containing all endpoints
    auto entry_of_instance = [&](const std::string& id) -> std::string
    {
        auto it = tree.owner_of_instance.find(id);
        return it == tree.owner_of_instance.end() ? std::string() : it->second;
    };
    auto ancestor_chain = [&](std::string entry) -> std::vector<std::string>
    {
        std::vector<std::string> chain;  // entry, parent, ..., root
        while (!entry.empty())
        {
            chain.push_back(entry);
            auto it = tree.parent_of_entry.find(entry);
            entry = it == tree.parent_of_entry.end() ? std::string() : it->second;
        }
        return chain;
    };
    for (const CommunicationRelation& r : relations)
    {
        std::vector<std::string> endpoints = r.producer_instance_ids;
        endpoints.insert(endpoints.end(), r.consumer_instance_ids.begin(),
                         r.consumer_instance_ids.end());
        if (endpoints.empty()) continue;
        std::vector<std::string> common = ancestor_chain(entry_of_instance(endpoints[0]));
        for (size_t i = 1; i < endpoints.size() && !common.empty(); ++i)
        {
            const auto chain = ancestor_chain(entry_of_instance(endpoints[i]));
            const std::set<std::string> chain_set(chain.begin(), chain.end());
            while (!common.empty() && !chain_set.count(common.front()))
                common.erase(common.begin());
        }
        const std::string owner_entry = common.empty() ? ldd.roots.front() : common.front();
        const std::string owner_crc = crc_of_entry.at(owner_entry);
        for (ComposedRosNodeClassifier& c : model.composed_classifiers)
            if (c.id == owner_crc) c.relations.push_back(r);
    }

    if (ldd.roots.size() == 1)
    {
        model.root_composed_id = crc_of_entry.at(ldd.roots.front());
    }
    else
    {
        // umbrella subsystem when several independent roots exist
        ComposedRosNodeClassifier umbrella;
        umbrella.id = canonical_id("crc", ordinal++);
        umbrella.name = "system";
        for (const std::string& root : ldd.roots)
        {
            RosNodePart part;
            part.instance_id = root;
            part.classifier_ref = crc_of_entry.at(root);
            const launch::LaunchFileEntry* e = ldd.find_entry(root);
            part.node_name = e ? e->type : root;
            part.ns = "/";
            umbrella.parts.push_back(std::move(part));
        }
        model.composed_classifiers.push_back(std::move(umbrella));
        model.root_composed_id = model.composed_classifiers.back().id;
        sink.info("", "multiple root launch files; wrapped in synthetic subsystem 'system'");
    }
    return model;
}

std::vector<Violation> validate_architecture(const ArchitectureModel& model)
{
    const ComposedRosNodeClassifier* root = model.find_composed(model.root_composed_id);
    if (!root) return {{model.root_composed_id, "root composed classifier does not exist"}};
    return validate_model(*root, model.index());
}

std::string emit_acd(const AtomicRosNodeClassifier& c)
{
    std::string out = "@startuml\n";
    out += "component " + puml_quote(c.class_name) + " <<AtomicRosNodeClassifier>> as " + c.id +
           " {\n";
    if (c.node_name) out += "  node_name " + puml_quote(*c.node_name) + "\n";
    if (c.execution) out += "  execution " + puml_quote(*c.execution) + "\n";
    for (const CommunicationPort& p : c.ports)
    {
        out += "  port " + std::string(to_string(p.kind)) + " " + puml_quote(p.declared_name) +
               " : " + p.interface_type;
        if (p.callback_name) out += " -> " + *p.callback_name;
        out += "\n";
    }
    out += "}\n@enduml\n";
    return out;
}

std::string emit_ccd(const ArchitectureModel& model)
{
    const auto violations = validate_architecture(model);
    if (!violations.empty())
    {
        std::string msg = "architecture model invariant violations:";
        for (const Violation& v : violations) msg += "\n  " + v.element + ": " + v.invariant;
        throw AnalysisError(msg);
    }
    const ComposedRosNodeClassifier* root = model.find_composed(model.root_composed_id);
    std::string out = "@startuml\n";
    emit_composed_block(out, "", *root, model);
    out += "@enduml\n";
    return out;
}

}  // namespace archrec::synth
