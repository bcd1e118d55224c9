#include "archrec/launch_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/name_resolution.hpp"
#include "archrec/package_scan.hpp"
#include "archrec/textutil.hpp"

namespace archrec::launch
{

const LaunchFileEntry* LaunchDependencyDescription::find_entry(const std::string& id) const
{
    for (const LaunchFileEntry& e : list_launch_file)
        if (e.id == id) return &e;
    return nullptr;
}

const NodeInstanceEntry* LaunchDependencyDescription::find_instance(const std::string& id) const
{
    for (const NodeInstanceEntry& n : node_instances)
        if (n.id == id) return &n;
    return nullptr;
}

namespace
{

bool is_launch_file_name(const fs::path& p)
{
    const std::string name = p.filename().generic_string();
    return name.ends_with(".launch.py") || name.ends_with(".launch.xml") ||
           name.ends_with(".launch.yaml") || name.ends_with(".launch.yml");
}

std::string effective_scope(const std::string& base, const std::vector<std::string>& pushes,
                            const std::optional<std::string>& ns_attribute)
{
    std::string scope = base;
    for (const std::string& p : pushes) scope = names::join_namespaces(scope, p);
    if (ns_attribute) scope = names::join_namespaces(scope, *ns_attribute);
    return scope;
}

struct Action
{
    const RawNodeDecl* node = nullptr;
    const RawInclude* include = nullptr;
    int order = 0;
};

std::vector<Action> ordered_actions(const ParsedLaunchFile& parsed)
{
    std::vector<Action> actions;
    for (const RawNodeDecl& n : parsed.nodes) actions.push_back({&n, nullptr, n.order});
    for (const RawInclude& i : parsed.includes) actions.push_back({nullptr, &i, i.order});
    std::sort(actions.begin(), actions.end(),
              [](const Action& a, const Action& b) { return a.order < b.order; });
    return actions;
}

class GraphBuilder
{
public:
    GraphBuilder(const fs::path& repo_root, DiagnosticSink& sink)
        : repo_root_(repo_root), sink_(sink)
    {
        DiagnosticSink scratch;  // package scan issues surface during extraction
        for (const extract::PackageDescriptor& pkg : extract::scan_packages(repo_root, scratch))
            package_roots_.emplace(pkg.package_name, pkg.root_path);
        all_launch_files_ = discover_launch_files(repo_root);
    }

    LaunchDependencyDescription build(const std::vector<fs::path>& roots)
    {
        for (const fs::path& root : roots)
        {
            if (!fs::exists(root))
                throw InputError("root launch file not found: " + root.generic_string());
            visit(root, "/");
        }
        finish_roots();
        return std::move(ldd_);
    }

private:
    std::string visit(const fs::path& path, const std::string& base_ns)
    {
        const fs::path canonical = fs::weakly_canonical(path);
        for (const auto& [p, id] : stack_)
        {
            if (p != canonical) continue;
            std::string chain;
            bool collecting = false;
            for (const auto& [sp, sid] : stack_)
            {
                if (sp == canonical) collecting = true;
                if (collecting) chain += repo_relative(repo_root_, sp) + " -> ";
            }
            chain += repo_relative(repo_root_, canonical);
            throw AnalysisError("launch include cycle: " + chain);
        }

        const std::string entry_id = canonical_id("lf", next_lf_++);
        stack_.emplace_back(canonical, entry_id);

        ParsedLaunchFile parsed = parse_launch_file(path, std::nullopt, sink_);
        LaunchFileEntry entry;
        entry.id = entry_id;
        entry.type = path.filename().generic_string();
        const size_t entry_slot = ldd_.list_launch_file.size();
        ldd_.list_launch_file.push_back(entry);
        base_of_[entry_id] = base_ns;

        std::vector<std::pair<std::string, std::string>> member_scopes;  // id -> scope
        for (const Action& action : ordered_actions(parsed))
        {
            if (action.node)
            {
                const RawNodeDecl& decl = *action.node;
                NodeInstanceEntry inst;
                inst.id = canonical_id("n", next_n_++);
                inst.exec_name = decl.executable;
                if (decl.name)
                {
                    inst.node_name = *decl.name;
                }
                else
                {
                    inst.node_name = decl.executable;
                    sink_.info(entry.type, "node instance " + inst.id +
                                               " has no declared name; using executable '" +
                                               decl.executable + "'");
                }
                try
                {
                    inst.ns = effective_scope(base_ns, decl.group_namespaces,
                                              decl.ns_attribute);
                }
                catch (const AnalysisError& e)
                {
                    sink_.warning(entry.type, std::string("namespace resolution failed: ") +
                                                  e.what());
                    inst.ns = base_ns;
                }
                for (const RawRemap& r : decl.remappings)
                    inst.remappings.push_back({r.from, r.to});
                member_scopes.emplace_back(inst.id, inst.ns);
                ldd_.list_launch_file[entry_slot].nodes.push_back(inst.id);
                ldd_.node_instances.push_back(std::move(inst));
            }
            else
            {
                const RawInclude& inc = *action.include;
                const auto target = resolve_include(inc, path);
                if (!target)
                {
                    sink_.warning(entry.type,
                                  "unresolved include: " +
                                      (inc.source_text.empty() ? "(empty)" : inc.source_text));
                    continue;
                }
                std::string scope = base_ns;
                try
                {
                    scope = effective_scope(base_ns, inc.group_namespaces, std::nullopt);
                }
                catch (const AnalysisError& e)
                {
                    sink_.warning(entry.type, std::string("namespace resolution failed: ") +
                                                  e.what());
                }
                const std::string child_id = visit(*target, scope);
                member_scopes.emplace_back(child_id, scope);
                ldd_.list_launch_file[entry_slot].included_launch_files.push_back(child_id);
            }
        }

        for (const auto& [id, scope] : member_scopes)
            if (scope != base_ns) ldd_.list_launch_file[entry_slot].namespace_scopes[scope]
                .push_back(id);

        stack_.pop_back();
        return entry_id;
    }

    std::optional<fs::path> resolve_include(const RawInclude& inc, const fs::path& from)
    {
        if (inc.literal_segments.empty()) return std::nullopt;
        fs::path rel;
        for (const std::string& seg : inc.literal_segments) rel /= seg;

        if (inc.share_package)
        {
            auto it = package_roots_.find(*inc.share_package);
            if (it != package_roots_.end())
            {
                const fs::path candidate = it->second / rel;
                if (fs::exists(candidate)) return candidate;
            }
        }
        const fs::path sibling = from.parent_path() / rel;
        if (fs::exists(sibling)) return sibling;
        const fs::path from_root = repo_root_ / rel;
        if (fs::exists(from_root)) return from_root;

        // unique suffix match among known launch files
        std::vector<fs::path> matches;
        const std::string suffix = rel.generic_string();
        for (const fs::path& p : all_launch_files_)
            if (p.generic_string().ends_with(suffix)) matches.push_back(p);
        if (matches.size() == 1) return matches[0];
        if (matches.size() > 1)
            sink_.warning(from.filename().generic_string(),
                          "include path '" + suffix + "' is ambiguous (" +
                              std::to_string(matches.size()) + " candidates)");
        return std::nullopt;
    }

    void finish_roots()
    {
        std::set<std::string> included;
        for (const LaunchFileEntry& e : ldd_.list_launch_file)
            for (const std::string& id : e.included_launch_files) included.insert(id);
        for (const LaunchFileEntry& e : ldd_.list_launch_file)
            if (!included.count(e.id)) ldd_.roots.push_back(e.id);
    }

    fs::path repo_root_;
    DiagnosticSink& sink_;
    std::map<std::string, fs::path> package_roots_;
    std::vector<fs::path> all_launch_files_;
    std::vector<std::pair<fs::path, std::string>> stack_;
    std::map<std::string, std::string> base_of_;
    LaunchDependencyDescription ldd_;
    int next_lf_ = 1;
    int next_n_ = 1;
};

}  // namespace

std::vector<fs::path> discover_launch_files(const fs::path& repo_root)
{
    return list_files(repo_root, is_launch_file_name);
}

LaunchDependencyDescription build_launch_dependency_description(
    const std::vector<fs::path>& root_launch_paths, const fs::path& repo_root,
    DiagnosticSink& sink)
{
    if (root_launch_paths.empty())
        throw InputError("no root launch files given or discovered");
    GraphBuilder builder(repo_root, sink);
    return builder.build(root_launch_paths);
}

InstanceLinks link_instances_to_classifiers(const LaunchDependencyDescription& ldd,
                                            const extract::NodeInventory& inventory,
                                            DiagnosticSink& sink)
{
    // classifier lists in natural id order for deterministic tie-breaks
    std::vector<const AtomicRosNodeClassifier*> classifiers;
    for (const auto& pkg : inventory.packages)
        for (const AtomicRosNodeClassifier& c : pkg.classifiers) classifiers.push_back(&c);
    std::sort(classifiers.begin(), classifiers.end(),
              [](const AtomicRosNodeClassifier* a, const AtomicRosNodeClassifier* b)
              { return natural_less(a->id, b->id); });

    InstanceLinks links;
    for (const NodeInstanceEntry& inst : ldd.node_instances)
    {
        std::vector<const AtomicRosNodeClassifier*> by_exec;
        for (const auto* c : classifiers)
            if (c->execution && *c->execution == inst.exec_name) by_exec.push_back(c);
        if (by_exec.size() > 1)
        {
            std::string all;
            for (const auto* c : by_exec) all += (all.empty() ? "" : ", ") + c->id;
            sink.warning(inst.id, "execution identity '" + inst.exec_name +
                                      "' matches multiple classifiers (" + all +
                                      "); using " + by_exec.front()->id);
        }
        if (!by_exec.empty())
        {
            links.classifier_of[inst.id] = by_exec.front()->id;
            continue;
        }

        // class-name match: exact, or last :: segment of a plugin identity
        std::string wanted = inst.exec_name;
        const size_t sep = wanted.rfind("::");
        if (sep != std::string::npos) wanted = wanted.substr(sep + 2);
        std::vector<const AtomicRosNodeClassifier*> by_class;
        for (const auto* c : classifiers)
            if (c->class_name == wanted) by_class.push_back(c);
        if (by_class.size() > 1)
            sink.warning(inst.id, "class name '" + wanted + "' matches multiple classifiers; "
                                  "using " + by_class.front()->id);
        if (!by_class.empty())
        {
            links.classifier_of[inst.id] = by_class.front()->id;
            continue;
        }
        sink.warning(inst.id,
                     "no classifier matches executable '" + inst.exec_name + "' (unmatched)");
    }
    return links;
}

void apply_links(LaunchDependencyDescription& ldd, const extract::NodeInventory& inventory,
                 const InstanceLinks& links)
{
    for (NodeInstanceEntry& inst : ldd.node_instances)
    {
        auto it = links.classifier_of.find(inst.id);
        if (it == links.classifier_of.end()) continue;
        const AtomicRosNodeClassifier* c = inventory.find(it->second);
        if (!c) continue;
        inst.class_name = c->class_name;
        inst.node_kind = c->compile_type;
    }
}

std::vector<Violation> validate_ldd(const LaunchDependencyDescription& ldd)
{
    std::vector<Violation> out;
    std::set<std::string> entry_ids, instance_ids;
    for (const LaunchFileEntry& e : ldd.list_launch_file)
        if (!entry_ids.insert(e.id).second)
            out.push_back({e.id, "launch entry id duplicated"});
    for (const NodeInstanceEntry& n : ldd.node_instances)
        if (!instance_ids.insert(n.id).second)
            out.push_back({n.id, "node instance id duplicated"});

    std::map<std::string, int> include_degree, node_owners;
    for (const LaunchFileEntry& e : ldd.list_launch_file)
    {
        std::set<std::string> members;
        for (const std::string& id : e.nodes)
        {
            members.insert(id);
            ++node_owners[id];
            if (!instance_ids.count(id))
                out.push_back({e.id, "references unknown node instance '" + id + "'"});
        }
        for (const std::string& id : e.included_launch_files)
        {
            members.insert(id);
            ++include_degree[id];
            if (!entry_ids.count(id))
                out.push_back({e.id, "references unknown launch entry '" + id + "'"});
        }
        for (const auto& [scope, ids] : e.namespace_scopes)
            for (const std::string& id : ids)
                if (!members.count(id))
                    out.push_back({e.id, "namespace scope '" + scope +
                                             "' lists non-member '" + id + "'"});
    }

    for (const NodeInstanceEntry& n : ldd.node_instances)
        if (node_owners[n.id] != 1)
            out.push_back({n.id, "node instance must be referenced by exactly one launch entry"});

    // roots = in-degree zero
    for (const LaunchFileEntry& e : ldd.list_launch_file)
    {
        const bool is_root =
            std::find(ldd.roots.begin(), ldd.roots.end(), e.id) != ldd.roots.end();
        if (is_root && include_degree[e.id] > 0)
            out.push_back({e.id, "root entry is included by another entry"});
        if (!is_root && include_degree[e.id] == 0)
            out.push_back({e.id, "entry with no includer is missing from roots"});
        if (include_degree[e.id] > 1)
            out.push_back({e.id, "entry included more than once (instances must be distinct)"});
    }

    // include graph acyclicity via DFS from roots
    {
        std::map<std::string, const LaunchFileEntry*> by_id;
        for (const LaunchFileEntry& e : ldd.list_launch_file) by_id[e.id] = &e;
        std::set<std::string> on_path;
        std::set<std::string> done;
        std::function<bool(const std::string&)> dfs = [&](const std::string& id) -> bool
        {
            if (on_path.count(id)) return false;
            if (done.count(id)) return true;
            on_path.insert(id);
            auto it = by_id.find(id);
            if (it != by_id.end())
                for (const std::string& child : it->second->included_launch_files)
                    if (!dfs(child))
                    {
                        on_path.erase(id);
                        return false;
                    }
            on_path.erase(id);
            done.insert(id);
            return true;
        };
        for (const LaunchFileEntry& e : ldd.list_launch_file)
            if (!dfs(e.id))
            {
                out.push_back({e.id, "include graph contains a cycle"});
                break;
            }
    }

    std::set<std::pair<std::string, std::string>> name_ns;
    for (const NodeInstanceEntry& n : ldd.node_instances)
        if (!name_ns.insert({n.node_name, n.ns}).second)
            out.push_back({n.id, "duplicate (node_name, namespace) pair: ('" + n.node_name +
                                     "', '" + n.ns + "')"});
    return out;
}

std::string emit_launch_dependency_json(const LaunchDependencyDescription& ldd)
{
    const auto violations = validate_ldd(ldd);
    if (!violations.empty())
    {
        std::string msg = "launch dependency invariant violations:";
        for (const Violation& v : violations) msg += "\n  " + v.element + ": " + v.invariant;
        throw AnalysisError(msg);
    }

    ordered_json j;
    j["list_launch_file"] = ordered_json::array();
    for (const LaunchFileEntry& e : ldd.list_launch_file)
    {
        ordered_json ej;
        ej["id"] = e.id;
        ej["type"] = e.type;
        ej["nodes"] = e.nodes;
        ej["included_launch_files"] = e.included_launch_files;
        ordered_json scopes = ordered_json::object();
        for (const auto& [scope, ids] : e.namespace_scopes) scopes[scope] = ids;
        ej["namespace"] = std::move(scopes);
        j["list_launch_file"].push_back(std::move(ej));
    }
    j["node_instances"] = ordered_json::array();
    for (const NodeInstanceEntry& n : ldd.node_instances)
    {
        ordered_json nj;
        nj["id"] = n.id;
        nj["node_kind"] =
            n.node_kind ? ordered_json(to_string(*n.node_kind)) : ordered_json(nullptr);
        nj["exec_name"] = n.exec_name;
        nj["class_name"] = n.class_name ? ordered_json(*n.class_name) : ordered_json(nullptr);
        nj["node_name"] = n.node_name;
        nj["namespace"] = n.ns;
        nj["remappings"] = ordered_json::array();
        for (const Remapping& r : n.remappings)
            nj["remappings"].push_back({{"from", r.from_name}, {"to", r.to_name}});
        j["node_instances"].push_back(std::move(nj));
    }
    j["roots"] = ldd.roots;
    return j.dump(2) + "\n";
}

LaunchDependencyDescription load_launch_dependency(const std::string& text)
{
    ordered_json j;
    try
    {
        j = ordered_json::parse(text);
    }
    catch (const nlohmann::json::exception& e)
    {
        throw AnalysisError(std::string("launch dependency description is not valid JSON: ") +
                            e.what());
    }
    LaunchDependencyDescription ldd;
    for (const auto& ej : j.at("list_launch_file"))
    {
        LaunchFileEntry e;
        e.id = ej.at("id").get<std::string>();
        e.type = ej.at("type").get<std::string>();
        e.nodes = ej.at("nodes").get<std::vector<std::string>>();
        e.included_launch_files =
            ej.at("included_launch_files").get<std::vector<std::string>>();
        if (ej.contains("namespace"))
            for (const auto& [scope, ids] : ej.at("namespace").items())
                e.namespace_scopes[scope] = ids.get<std::vector<std::string>>();
        ldd.list_launch_file.push_back(std::move(e));
    }
    for (const auto& nj : j.at("node_instances"))
    {
        NodeInstanceEntry n;
        n.id = nj.at("id").get<std::string>();
        if (!nj.at("node_kind").is_null())
            n.node_kind = compile_type_from_string(nj.at("node_kind").get<std::string>());
        n.exec_name = nj.at("exec_name").get<std::string>();
        if (!nj.at("class_name").is_null())
            n.class_name = nj.at("class_name").get<std::string>();
        n.node_name = nj.at("node_name").get<std::string>();
        n.ns = nj.at("namespace").get<std::string>();
        if (nj.contains("remappings"))
            for (const auto& rj : nj.at("remappings"))
                n.remappings.push_back(
                    {rj.at("from").get<std::string>(), rj.at("to").get<std::string>()});
        ldd.node_instances.push_back(std::move(n));
    }
    ldd.roots = j.at("roots").get<std::vector<std::string>>();
    return ldd;
}

}  // namespace archrec::launch
