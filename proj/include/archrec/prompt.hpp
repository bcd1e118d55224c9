// Prompt-contract machinery: seven-field templates with the two intermediate
// JSON artifacts embedded verbatim as instruction context.
#pragma once

#include <string>
#include <vector>

#include "archrec/launch_graph.hpp"
#include "archrec/node_extract.hpp"

namespace archrec::llm
{

struct PromptContract
{
    std::string role;
    std::string goal;
    std::string backstory;
    std::string examples;
    std::string input;
    std::string task;
    std::string expected_output;

    // Fixed template sentences connect the seven fields into one continuous
    // task specification. Deterministic for fixed inputs.
    std::string text() const;
};

std::vector<std::string> available_templates();

// Templates: "system_architecture_constructor" (composed-model synthesis brief)
// and "node_description" (per-classifier description authoring).
// Unknown template -> InputError listing the available names.
PromptContract render_prompt(const std::string& template_name,
                             const extract::NodeInventory& inventory,
                             const launch::LaunchDependencyDescription& ldd);

}  // namespace archrec::llm
