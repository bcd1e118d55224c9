#include "archrec/llm_client.hpp"

#include <cstdlib>
#include <set>

#include <httplib.h>
#include <json.hpp>

#include "archrec/prompt.hpp"
#include "archrec/textutil.hpp"

namespace archrec::llm
{
namespace
{

struct ParsedUrl
{
    std::string host_port;  // scheme://host:port form accepted by the client
    std::string path;
};

std::optional<ParsedUrl> parse_url(const std::string& url)
{
    const size_t scheme = url.find("://");
    if (scheme == std::string::npos) return std::nullopt;
    const size_t path_at = url.find('/', scheme + 3);
    ParsedUrl out;
    if (path_at == std::string::npos)
    {
        out.host_port = url;
        out.path = "/";
    }
    else
    {
        out.host_port = url.substr(0, path_at);
        out.path = url.substr(path_at);
    }
    return out;
}

}  // namespace

EndpointConfig EndpointConfig::from_env()
{
    EndpointConfig cfg;
    if (const char* url = std::getenv("ARCH_RECOVERY_LLM_ENDPOINT"))
        if (*url) cfg.url = url;
    if (const char* timeout = std::getenv("ARCH_RECOVERY_LLM_TIMEOUT_MS"))
    {
        char* end = nullptr;
        const long v = std::strtol(timeout, &end, 10);
        if (end && *end == '\0' && v > 0) cfg.timeout_ms = static_cast<int>(v);
    }
    return cfg;
}

GenerationResult generate_text(const std::string& prompt, const EndpointConfig& config,
                               const std::string& fallback_text, DiagnosticSink& sink)
{
    if (prompt.empty())
    {
        sink.warning("llm", "empty prompt; using fallback");
        return {fallback_text, true};
    }
    if (!config.configured())
    {
        sink.info("llm", "no endpoint configured; using deterministic fallback");
        return {fallback_text, true};
    }
    const auto parsed = parse_url(*config.url);
    if (!parsed)
    {
        sink.warning("llm", "endpoint URL not parseable: " + *config.url);
        return {fallback_text, true};
    }

    nlohmann::ordered_json body;
    body["prompt"] = prompt;
    const std::string payload = body.dump();

    for (int attempt = 0; attempt <= config.max_retries; ++attempt)
    {
        httplib::Client client(parsed->host_port);
        client.set_connection_timeout(0, config.timeout_ms * 1000LL);
        client.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
        client.set_write_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);

        auto res = client.Post(parsed->path, payload, "application/json");
        if (!res || res->status != 200)
        {
            sink.warning("llm", "request attempt " + std::to_string(attempt + 1) + " failed" +
                                    (res ? " (status " + std::to_string(res->status) + ")"
                                         : " (no response)"));
            continue;
        }
        try
        {
            const auto j = nlohmann::json::parse(res->body);
            if (j.contains("completion") && j.at("completion").is_string())
                return {j.at("completion").get<std::string>(), false};
            sink.warning("llm", "response missing 'completion' field; using fallback");
            return {fallback_text, true};
        }
        catch (const nlohmann::json::exception&)
        {
            sink.warning("llm", "response is not valid JSON; using fallback");
            return {fallback_text, true};
        }
    }
    sink.warning("llm", "all attempts failed; using deterministic fallback");
    return {fallback_text, true};
}

void describe_classifiers(extract::NodeInventory& inventory,
                          const launch::LaunchDependencyDescription& ldd,
                          const EndpointConfig& config, DiagnosticSink& sink)
{
    if (!config.configured())
    {
        sink.info("llm", "description pass skipped; deterministic descriptions kept");
        return;
    }
    const PromptContract contract = render_prompt("node_description", inventory, ldd);
    const GenerationResult result = generate_text(contract.text(), config, "", sink);
    if (result.used_fallback) return;

    nlohmann::json mapping;
    try
    {
        mapping = nlohmann::json::parse(result.text);
    }
    catch (const nlohmann::json::exception&)
    {
        sink.warning("llm", "completion is not a JSON object; descriptions unchanged");
        return;
    }
    if (!mapping.is_object())
    {
        sink.warning("llm", "completion is not a JSON object; descriptions unchanged");
        return;
    }

    std::set<std::string> known;
    for (auto& pkg : inventory.packages)
        for (AtomicRosNodeClassifier& c : pkg.classifiers)
        {
            known.insert(c.id);
            auto it = mapping.find(c.id);
            if (it == mapping.end())
            {
                sink.info("llm", "no description returned for " + c.id + "; default kept");
                continue;
            }
            if (!it->is_string())
            {
                sink.warning("llm", "description for " + c.id + " is not a string; ignored");
                continue;
            }
            const std::string text = trim(it->get<std::string>());
            if (!text.empty()) c.description = text;
        }
    for (const auto& [key, value] : mapping.items())
        if (!known.count(key))
            sink.warning("llm", "completion names unknown classifier '" + key +
                                    "'; ignored (descriptions cannot alter structure)");
}

}  // namespace archrec::llm
