#include "archrec/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace archrec::eval
{

const char* to_string(ElementKind k)
{
    switch (k)
    {
        case ElementKind::arc_name: return "arc_name";
        case ElementKind::arc_stereotype: return "arc_stereotype";
        case ElementKind::message_type: return "message_type";
        case ElementKind::callback_function_name: return "callback_function_name";
        case ElementKind::service_type: return "service_type";
        case ElementKind::service_function_name: return "service_function_name";
        case ElementKind::composed_classifier_name: return "composed_classifier_name";
        case ElementKind::node_part_name: return "node_part_name";
        case ElementKind::node_part_classifier_ref: return "node_part_classifier_ref";
        case ElementKind::node_part_namespace: return "node_part_namespace";
        case ElementKind::communication_relation: return "communication_relation";
        case ElementKind::remapping: return "remapping";
    }
    return "?";
}

const char* to_string(Level l) { return l == Level::acd ? "ACD" : "CCD"; }

Level level_of(ElementKind k)
{
    switch (k)
    {
        case ElementKind::arc_name:
        case ElementKind::arc_stereotype:
        case ElementKind::message_type:
        case ElementKind::callback_function_name:
        case ElementKind::service_type:
        case ElementKind::service_function_name: return Level::acd;
        default: return Level::ccd;
    }
}

const std::array<ElementKind, 6>& kinds_of(Level l)
{
    static const std::array<ElementKind, 6> acd = {
        ElementKind::arc_name,          ElementKind::arc_stereotype,
        ElementKind::message_type,      ElementKind::callback_function_name,
        ElementKind::service_type,      ElementKind::service_function_name,
    };
    static const std::array<ElementKind, 6> ccd = {
        ElementKind::composed_classifier_name, ElementKind::node_part_name,
        ElementKind::node_part_classifier_ref, ElementKind::node_part_namespace,
        ElementKind::communication_relation,   ElementKind::remapping,
    };
    return l == Level::acd ? acd : ccd;
}

void ElementSets::add(ElementKind kind, std::string key)
{
    elements[kind].push_back(std::move(key));
}

void ElementSets::sort_all()
{
    for (auto& [kind, keys] : elements) std::sort(keys.begin(), keys.end());
}

void ElementSets::merge(const ElementSets& other)
{
    for (const auto& [kind, keys] : other.elements)
    {
        auto& mine = elements[kind];
        mine.insert(mine.end(), keys.begin(), keys.end());
        std::sort(mine.begin(), mine.end());
    }
}

size_t ElementSets::total(Level l) const
{
    size_t n = 0;
    for (ElementKind k : kinds_of(l))
    {
        auto it = elements.find(k);
        if (it != elements.end()) n += it->second.size();
    }
    return n;
}

std::map<ElementKind, Counts> compare_models(const ElementSets& recovered,
                                             const ElementSets& reference)
{
    std::map<ElementKind, Counts> out;
    static const std::vector<std::string> none;
    for (Level l : {Level::acd, Level::ccd})
    {
        for (ElementKind k : kinds_of(l))
        {
            auto ri = recovered.elements.find(k);
            auto fi = reference.elements.find(k);
            const std::vector<std::string>& rec = ri == recovered.elements.end() ? none : ri->second;
            const std::vector<std::string>& ref = fi == reference.elements.end() ? none : fi->second;

            // sorted multiset intersection
            long tp = 0;
            size_t i = 0, j = 0;
            while (i < rec.size() && j < ref.size())
            {
                if (rec[i] == ref[j])
                {
                    ++tp;
                    ++i;
                    ++j;
                }
                else if (rec[i] < ref[j])
                    ++i;
                else
                    ++j;
            }
            Counts c;
            c.tp = tp;
            c.fp = static_cast<long>(rec.size()) - tp;
            c.fn = static_cast<long>(ref.size()) - tp;
            out[k] = c;
        }
    }
    return out;
}

Metrics compute_metrics(const Counts& c)
{
    const bool vacuous = c.tp == 0 && c.fp == 0 && c.fn == 0;
    Metrics m;
    m.precision = (c.tp + c.fp) > 0 ? double(c.tp) / double(c.tp + c.fp) : (vacuous ? 1.0 : 0.0);
    m.recall = (c.tp + c.fn) > 0 ? double(c.tp) / double(c.tp + c.fn) : (vacuous ? 1.0 : 0.0);
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

Metrics macro_average(const std::map<ElementKind, Metrics>& per_kind, Level level)
{
    Metrics sum;
    int n = 0;
    for (ElementKind k : kinds_of(level))
    {
        auto it = per_kind.find(k);
        if (it == per_kind.end()) continue;
        sum.precision += it->second.precision;
        sum.recall += it->second.recall;
        sum.f1 += it->second.f1;
        ++n;
    }
    if (n == 0) return Metrics{};
    return Metrics{sum.precision / n, sum.recall / n, sum.f1 / n};
}

EvaluationReport evaluate_sets(const ElementSets& recovered, const ElementSets& reference)
{
    const auto counts = compare_models(recovered, reference);
    EvaluationReport report;
    for (Level l : {Level::acd, Level::ccd})
    {
        const bool present = recovered.total(l) > 0 || reference.total(l) > 0;
        if (!present)
        {
            report.notices.push_back(std::string(to_string(l)) +
                                     " omitted: no elements in either model");
            continue;
        }
        LevelReport lr;
        std::map<ElementKind, Metrics> per_kind;
        for (ElementKind k : kinds_of(l))
        {
            KindResult r;
            r.counts = counts.at(k);
            r.metrics = compute_metrics(r.counts);
            per_kind[k] = r.metrics;
            lr.per_element[k] = r;
        }
        lr.macro = macro_average(per_kind, l);
        if (l == Level::acd)
            report.acd = std::move(lr);
        else
            report.ccd = std::move(lr);
    }
    return report;
}

namespace
{

ordered_json level_to_json(const LevelReport& lr, Level l)
{
    ordered_json j;
    ordered_json elems;
    for (ElementKind k : kinds_of(l))
    {
        const KindResult& r = lr.per_element.at(k);
        ordered_json e;
        e["tp"] = r.counts.tp;
        e["fp"] = r.counts.fp;
        e["fn"] = r.counts.fn;
        e["precision"] = r.metrics.precision;
        e["recall"] = r.metrics.recall;
        e["f1"] = r.metrics.f1;
        elems[to_string(k)] = std::move(e);
    }
    j["elements"] = std::move(elems);
    j["macro"] = {{"precision", lr.macro.precision},
                  {"recall", lr.macro.recall},
                  {"f1", lr.macro.f1}};
    return j;
}

}  // namespace

ordered_json report_to_json(const EvaluationReport& report)
{
    ordered_json j;
    j["schema_version"] = 1;
    ordered_json levels;
    if (report.acd) levels["ACD"] = level_to_json(*report.acd, Level::acd);
    if (report.ccd) levels["CCD"] = level_to_json(*report.ccd, Level::ccd);
    j["levels"] = std::move(levels);
    j["notices"] = report.notices;
    j["conventions"] = "precision=tp/(tp+fp), recall=tp/(tp+fn); 0/0 scores 1.0 only when "
                       "both element sets are empty, else 0.0";
    return j;
}

std::string report_to_text(const EvaluationReport& report)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    auto print_level = [&](const LevelReport& lr, Level l)
    {
        os << to_string(l) << "\n";
        for (ElementKind k : kinds_of(l))
        {
            const KindResult& r = lr.per_element.at(k);
            os << "  " << std::left << std::setw(26) << to_string(k) << std::right
               << " tp=" << std::setw(4) << r.counts.tp << " fp=" << std::setw(4)
               << r.counts.fp << " fn=" << std::setw(4) << r.counts.fn
               << "  P=" << r.metrics.precision << " R=" << r.metrics.recall
               << " F1=" << r.metrics.f1 << "\n";
        }
        os << "  " << std::left << std::setw(26) << "macro" << std::right
           << "                              P=" << lr.macro.precision
           << " R=" << lr.macro.recall << " F1=" << lr.macro.f1 << "\n";
    };
    if (report.acd) print_level(*report.acd, Level::acd);
    if (report.ccd) print_level(*report.ccd, Level::ccd);
    for (const std::string& n : report.notices) os << "note: " << n << "\n";
    return os.str();
}

std::optional<double> min_macro_f1(const EvaluationReport& report)
{
    std::optional<double> out;
    for (const auto* lr : {report.acd ? &*report.acd : nullptr, report.ccd ? &*report.ccd : nullptr})
    {
        if (!lr) continue;
        if (!out || lr->macro.f1 < *out) out = lr->macro.f1;
    }
    return out;
}

}  // namespace archrec::eval
