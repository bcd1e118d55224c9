// Optional client for an external text-generation endpoint. The deterministic
// pipeline never depends on it: every failure path lands on the fallback.
#pragma once

#include <optional>
#include <string>

#include "archrec/diagnostics.hpp"
#include "archrec/launch_graph.hpp"
#include "archrec/node_extract.hpp"

namespace archrec::llm
{

struct EndpointConfig
{
    std::optional<std::string> url;  // http://host:port/path
    int timeout_ms = 30000;
    int max_retries = 2;

    bool configured() const { return url.has_value(); }

    // Reads ARCH_RECOVERY_LLM_ENDPOINT and ARCH_RECOVERY_LLM_TIMEOUT_MS.
    static EndpointConfig from_env();
};

struct GenerationResult
{
    std::string text;
    bool used_fallback = false;
};

// POSTs {"prompt": <text>} and expects {"completion": <text>}. Missing endpoint,
// network failure after bounded retries, or a malformed response all return the
// fallback text with a diagnostic record.
GenerationResult generate_text(const std::string& prompt, const EndpointConfig& config,
                               const std::string& fallback_text, DiagnosticSink& sink);

// Description pass: asks the endpoint for a JSON object mapping classifier ids
// to description strings and applies it to the inventory. Structure is never
// touched; unknown ids are ignored with a diagnostic. No endpoint -> no change.
void describe_classifiers(extract::NodeInventory& inventory,
                          const launch::LaunchDependencyDescription& ldd,
                          const EndpointConfig& config, DiagnosticSink& sink);

}  // namespace archrec::llm
