#include "archrec/diagnostics.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

namespace archrec
{

const char* to_string(Severity s)
{
    switch (s)
    {
        case Severity::info: return "info";
        case Severity::warning: return "warning";
        case Severity::error: return "error";
    }
    return "info";
}

void DiagnosticSink::report(Severity severity, std::string file, std::string message)
{
    records_.push_back({severity, std::move(file), std::move(message)});
}

void DiagnosticSink::info(std::string file, std::string message)
{
    report(Severity::info, std::move(file), std::move(message));
}

void DiagnosticSink::warning(std::string file, std::string message)
{
    report(Severity::warning, std::move(file), std::move(message));
}

void DiagnosticSink::error(std::string file, std::string message)
{
    report(Severity::error, std::move(file), std::move(message));
}

bool DiagnosticSink::has_errors() const
{
    return std::any_of(records_.begin(), records_.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

size_t DiagnosticSink::count(Severity s) const
{
    return static_cast<size_t>(std::count_if(records_.begin(), records_.end(),
                                             [s](const Diagnostic& d)
                                             { return d.severity == s; }));
}

void DiagnosticSink::print(std::ostream& os) const
{
    for (const Diagnostic& d : records_)
    {
        os << '[' << to_string(d.severity) << "] ";
        if (!d.file.empty()) os << d.file << ": ";
        os << d.message << '\n';
    }
}

std::string DiagnosticSink::to_jsonl() const
{
    std::string out;
    for (const Diagnostic& d : records_)
    {
        nlohmann::ordered_json j;
        j["severity"] = to_string(d.severity);
        j["file"] = d.file;
        j["message"] = d.message;
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace archrec
