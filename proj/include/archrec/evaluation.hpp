// Model conformance scoring: canonicalized element multisets, TP/FP/FN counting,
// precision/recall/F1, and per-level macro averages.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace archrec::eval
{

using ordered_json = nlohmann::ordered_json;

enum class Level
{
    acd,
    ccd,
};

// The twelve scored element kinds: six per abstraction level.
enum class ElementKind
{
    arc_name,
    arc_stereotype,
    message_type,
    callback_function_name,
    service_type,
    service_function_name,
    composed_classifier_name,
    node_part_name,
    node_part_classifier_ref,
    node_part_namespace,
    communication_relation,
    remapping,
};

const char* to_string(ElementKind k);
const char* to_string(Level l);
Level level_of(ElementKind k);
const std::array<ElementKind, 6>& kinds_of(Level l);

// Canonical element multisets: per kind, a sorted vector of normalized keys.
// Two elements are equal iff (kind, key) are equal.
struct ElementSets
{
    std::map<ElementKind, std::vector<std::string>> elements;

    void add(ElementKind kind, std::string key);
    void sort_all();
    void merge(const ElementSets& other);
    size_t total(Level l) const;
    bool operator==(const ElementSets& other) const { return elements == other.elements; }
};

struct Counts
{
    long tp = 0;
    long fp = 0;
    long fn = 0;
};

struct Metrics
{
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Multiset intersection/difference per kind over all twelve kinds.
// True negatives stay undefined: the element space is open-ended.
std::map<ElementKind, Counts> compare_models(const ElementSets& recovered,
                                             const ElementSets& reference);

// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = harmonic mean.
// 0/0 yields 1.0 when tp=fp=fn=0 (vacuous agreement) and 0.0 otherwise.
Metrics compute_metrics(const Counts& counts);

// Unweighted arithmetic mean over the six kinds of one level.
Metrics macro_average(const std::map<ElementKind, Metrics>& per_kind, Level level);

struct KindResult
{
    Counts counts;
    Metrics metrics;
};

struct LevelReport
{
    std::map<ElementKind, KindResult> per_element;
    Metrics macro;
};

// A level is reported only when either model contributes elements at it;
// empty levels are listed in `notices` instead.
struct EvaluationReport
{
    std::optional<LevelReport> acd;
    std::optional<LevelReport> ccd;
    std::vector<std::string> notices;
};

EvaluationReport evaluate_sets(const ElementSets& recovered, const ElementSets& reference);

ordered_json report_to_json(const EvaluationReport& report);
std::string report_to_text(const EvaluationReport& report);

// Lowest macro F1 across reported levels; empty when no level was reported.
std::optional<double> min_macro_f1(const EvaluationReport& report);

}  // namespace archrec::eval
