// Structured diagnostics: (severity, file, message) records collected during a run.
// Fatal conditions are exceptions; everything else is data in the sink.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace archrec
{

enum class Severity
{
    info,
    warning,
    error,
};

const char* to_string(Severity s);

struct Diagnostic
{
    Severity severity = Severity::info;
    std::string file;  // repo-relative path or artifact name; may be empty
    std::string message;
};

class DiagnosticSink
{
public:
    void report(Severity severity, std::string file, std::string message);
    void info(std::string file, std::string message);
    void warning(std::string file, std::string message);
    void error(std::string file, std::string message);

    const std::vector<Diagnostic>& records() const { return records_; }
    bool has_errors() const;
    size_t count(Severity s) const;

    // "[severity] file: message" lines.
    void print(std::ostream& os) const;
    // One JSON object per line: {"severity":..,"file":..,"message":..}
    std::string to_jsonl() const;

private:
    std::vector<Diagnostic> records_;
};

}  // namespace archrec
