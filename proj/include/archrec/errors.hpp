// Error taxonomy shared by all stages. Exit codes: 1 input, 2 analysis, 3 threshold.
#pragma once

#include <stdexcept>
#include <string>

namespace archrec
{

// Bad invocation or unreadable inputs (missing repo, missing artifact file).
class InputError : public std::runtime_error
{
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Fatal analysis condition: include cycles, invariant violations, unparseable models.
class AnalysisError : public std::runtime_error
{
public:
    explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace archrec
