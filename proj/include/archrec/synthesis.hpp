// SystemArchitectureConstructor stage: assembles the composed model from the two
// intermediate artifacts and emits blueprint-conformant PlantUML at both levels.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "archrec/diagnostics.hpp"
#include "archrec/launch_graph.hpp"
#include "archrec/model.hpp"
#include "archrec/node_extract.hpp"

namespace archrec::synth
{

struct ArchitectureModel
{
    std::vector<AtomicRosNodeClassifier> atomic_classifiers;       // from the inventory
    std::vector<AtomicRosNodeClassifier> placeholder_classifiers;  // for unmatched instances
    std::vector<ComposedRosNodeClassifier> composed_classifiers;   // one per launch entry
    std::string root_composed_id;

    ClassifierIndex index() const;
    const ComposedRosNodeClassifier* find_composed(const std::string& id) const;
    bool is_placeholder(const std::string& classifier_id) const;
};

// Launch entry -> composed classifier; node instances -> parts typed by atomic
// classifiers; included launch files -> parts typed by child composed classifiers;
// relations attach to the lowest composed classifier containing all endpoints.
// Throws AnalysisError when the description has no root.
ArchitectureModel build_composed_model(const launch::LaunchDependencyDescription& ldd,
                                       const launch::InstanceLinks& links,
                                       const extract::NodeInventory& inventory,
                                       const std::vector<CommunicationRelation>& relations,
                                       DiagnosticSink& sink);

std::vector<Violation> validate_architecture(const ArchitectureModel& model);

// One component block with stereotype, name, and one typed port line per port.
std::string emit_acd(const AtomicRosNodeClassifier& classifier);

// Nested component blocks mirroring the composition hierarchy, parts labeled
// with name/namespace/executable, one connector per relation.
// Throws AnalysisError when validation fails.
std::string emit_ccd(const ArchitectureModel& model);

}  // namespace archrec::synth
