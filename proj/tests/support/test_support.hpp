// Shared helpers for the test suites: fixture paths and scratch output dirs.
#pragma once

#include <filesystem>
#include <string>

namespace testsup
{

namespace fs = std::filesystem;

inline fs::path fixtures()
{
    return fs::path(ARCHREC_FIXTURES_DIR);
}

inline fs::path fixture(const std::string& name)
{
    return fixtures() / name;
}

// Fresh per-test scratch directory under the process working directory.
inline fs::path fresh_dir(const std::string& name)
{
    const fs::path dir = fs::path("test_out") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace testsup
