// Effective-name computation: namespaces, private names, remappings, and the
// derivation of system-level communication relations from resolved port names.
#pragma once

#include <string>
#include <vector>

#include "archrec/diagnostics.hpp"
#include "archrec/model.hpp"

namespace archrec::names
{

// Resolution of one declared name inside an instance scope.
struct ResolvedName
{
    std::string raw;             // name as declared
    std::string base_namespace;  // normalized namespace of the declaring instance
    std::string node_name;
    std::string absolute;        // "/..."; no '~', no empty segments
};

// "" | "/" -> "/", "main" -> "/main", "/a/b/" -> "/a/b".
// Throws AnalysisError for namespaces with empty segments or whitespace.
std::string normalize_namespace(const std::string& ns);

// Outer-to-inner join: join_namespaces("/main", "sub") -> "/main/sub";
// an absolute inner namespace replaces the outer scope.
std::string join_namespaces(const std::string& outer, const std::string& inner);

// Resolution rules:
//   "/x"  -> "/x" (absolute passthrough)
//   "~x"  -> "/<ns>/<node>/x"  (also accepts "~/x")
//   "x"   -> "/<ns>/x", with the global namespace collapsing to "/x"
// Throws AnalysisError for names with whitespace, "//", inner '~', or empty result
// segments.
ResolvedName resolve_name(const std::string& raw, const std::string& ns,
                          const std::string& node_name);

// Applies the first matching rule (declaration order); from/to are themselves
// resolved in the instance scope; the output is never re-matched. Malformed
// rules are skipped with a diagnostic.
ResolvedName apply_remappings(const ResolvedName& resolved,
                              const std::vector<Remapping>& remappings,
                              const std::string& ns, const std::string& node_name,
                              DiagnosticSink& sink);

// One launch-time instance with its linked classifier (null = unmatched;
// unmatched instances contribute nothing to relations).
struct ResolutionInstance
{
    std::string instance_id;
    std::string node_name;
    std::string ns;
    std::vector<Remapping> remappings;
    const AtomicRosNodeClassifier* classifier = nullptr;
};

// Groups fully resolved port names into relations, producers and consumers
// partitioned by port kind. Result sorted by (kind, resolved_name); endpoint id
// lists deduplicated and naturally ordered. Interface-type conflicts inside a
// group keep one relation and emit a diagnostic. Never fatal.
std::vector<CommunicationRelation> derive_communication_relations(
    const std::vector<ResolutionInstance>& instances, DiagnosticSink& sink);

}  // namespace archrec::names
