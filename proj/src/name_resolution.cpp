#include "archrec/name_resolution.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "archrec/errors.hpp"
#include "archrec/textutil.hpp"

namespace archrec::names
{
namespace
{

void check_name_chars(const std::string& s, const std::string& what)
{
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw AnalysisError(what + " contains whitespace: '" + s + "'");
    if (s.find("//") != std::string::npos)
        throw AnalysisError(what + " contains empty segment: '" + s + "'");
}

std::string strip_trailing_slash(std::string s)
{
    while (s.size() > 1 && s.back() == '/') s.pop_back();
    return s;
}

}  // namespace

std::string normalize_namespace(const std::string& ns)
{
    std::string t = trim(ns);
    if (t.empty() || t == "/") return "/";
    check_name_chars(t, "namespace");
    if (t.front() != '/') t = "/" + t;
    t = strip_trailing_slash(t);
    if (t.find('~') != std::string::npos)
        throw AnalysisError("namespace contains '~': '" + ns + "'");
    return t;
}

std::string join_namespaces(const std::string& outer, const std::string& inner)
{
    const std::string in = trim(inner);
    if (in.empty()) return normalize_namespace(outer);
    if (in.front() == '/') return normalize_namespace(in);
    const std::string base = normalize_namespace(outer);
    return normalize_namespace(base == "/" ? "/" + in : base + "/" + in);
}

ResolvedName resolve_name(const std::string& raw, const std::string& ns,
                          const std::string& node_name)
{
    if (raw.empty()) throw AnalysisError("cannot resolve an empty name");
    check_name_chars(raw, "name");
    if (raw.find('~', 1) != std::string::npos)
        throw AnalysisError("name contains '~' beyond the leading position: '" + raw + "'");

    const std::string base = normalize_namespace(ns);
    ResolvedName out;
    out.raw = raw;
    out.base_namespace = base;
    out.node_name = node_name;

    std::string abs;
    if (raw.front() == '/')
    {
        abs = strip_trailing_slash(raw);
    }
    else if (raw.front() == '~')
    {
        if (node_name.empty())
            throw AnalysisError("private name '" + raw + "' needs a node name");
        std::string rest = raw.substr(1);
        if (!rest.empty() && rest.front() == '/') rest = rest.substr(1);
        abs = (base == "/" ? "" : base) + "/" + node_name;
        if (!rest.empty()) abs += "/" + rest;
    }
    else
    {
        abs = (base == "/" ? "" : base) + "/" + raw;
        abs = strip_trailing_slash(abs);
    }

    if (abs.empty() || abs.front() != '/' || abs.find("//") != std::string::npos)
        throw AnalysisError("resolution produced an invalid name: '" + abs + "'");
    out.absolute = abs;
    return out;
}

ResolvedName apply_remappings(const ResolvedName& resolved,
                              const std::vector<Remapping>& remappings,
                              const std::string& ns, const std::string& node_name,
                              DiagnosticSink& sink)
{
    for (const Remapping& rule : remappings)
    {
        ResolvedName from;
        try
        {
            from = resolve_name(rule.from_name, ns, node_name);
        }
        catch (const AnalysisError& e)
        {
            sink.warning("", "remapping rule skipped (" + std::string(e.what()) + ")");
            continue;
        }
        if (from.absolute != resolved.absolute) continue;

        try
        {
            ResolvedName to = resolve_name(rule.to_name, ns, node_name);
            to.raw = rule.to_name;
            return to;
        }
        catch (const AnalysisError& e)
        {
            sink.warning("", "remapping rule skipped (" + std::string(e.what()) + ")");
            continue;
        }
    }
    return resolved;
}

std::vector<CommunicationRelation> derive_communication_relations(
    const std::vector<ResolutionInstance>& instances, DiagnosticSink& sink)
{
    struct Group
    {
        std::set<std::string> types;
        std::set<std::string, NaturalLess> producers;
        std::set<std::string, NaturalLess> consumers;
    };
    // key: (kind, resolved name); topic sorts before service
    std::map<std::pair<int, std::string>, Group> groups;

    for (const ResolutionInstance& inst : instances)
    {
        if (!inst.classifier) continue;
        for (const CommunicationPort& port : inst.classifier->ports)
        {
            if (port.unresolved_name)
            {
                sink.warning(inst.instance_id,
                             "port with unresolved name '" + port.declared_name +
                                 "' excluded from relation derivation");
                continue;
            }
            ResolvedName rn;
            try
            {
                rn = resolve_name(port.declared_name, inst.ns, inst.node_name);
                rn = apply_remappings(rn, inst.remappings, inst.ns, inst.node_name, sink);
            }
            catch (const AnalysisError& e)
            {
                sink.warning(inst.instance_id,
                             "port name '" + port.declared_name +
                                 "' could not be resolved: " + e.what());
                continue;
            }

            const bool is_topic =
                port.kind == PortKind::publisher || port.kind == PortKind::subscriber;
            Group& g = groups[{is_topic ? 0 : 1, rn.absolute}];
            g.types.insert(port.interface_type);
            const bool produces =
                port.kind == PortKind::publisher || port.kind == PortKind::service_server;
            if (produces)
                g.producers.insert(inst.instance_id);
            else
                g.consumers.insert(inst.instance_id);
        }
    }

    std::vector<CommunicationRelation> out;
    out.reserve(groups.size());
    for (const auto& [key, g] : groups)
    {
        CommunicationRelation r;
        r.kind = key.first == 0 ? RelationKind::topic : RelationKind::service;
        r.resolved_name = key.second;
        r.interface_type = *g.types.begin();  // lexicographically smallest on conflict
        if (g.types.size() > 1)
        {
            std::string all;
            for (const std::string& t : g.types) all += (all.empty() ? "" : ", ") + t;
            sink.warning(r.resolved_name, "interface type conflict across endpoints: " + all);
        }
        r.producer_instance_ids.assign(g.producers.begin(), g.producers.end());
        r.consumer_instance_ids.assign(g.consumers.begin(), g.consumers.end());
        out.push_back(std::move(r));
    }

    std::sort(out.begin(), out.end(),
              [](const CommunicationRelation& a, const CommunicationRelation& b)
              {
                  if (a.kind != b.kind) return a.kind == RelationKind::topic;
                  return a.resolved_name < b.resolved_name;
              });
    return out;
}

}  // namespace archrec::names
