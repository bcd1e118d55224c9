// Discovery of ROS 2 packages: walks a repository for package manifests.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "archrec/diagnostics.hpp"

namespace archrec::extract
{

namespace fs = std::filesystem;

enum class BuildType
{
    python_package,
    cpp_package,
    mixed,
};

const char* to_string(BuildType t);

struct PackageDescriptor
{
    std::string package_name;
    fs::path root_path;      // directory containing the manifest
    fs::path manifest_path;  // package.xml
    BuildType build_type = BuildType::python_package;
};

// One descriptor per directory containing a package manifest, sorted by
// package_name. Unreadable root -> InputError; malformed manifests are skipped
// with a diagnostic. Nested packages are all found.
std::vector<PackageDescriptor> scan_packages(const fs::path& repo_root, DiagnosticSink& sink);

}  // namespace archrec::extract
