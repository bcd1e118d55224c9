#include "archrec/package_scan.hpp"

#include <algorithm>

#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/textutil.hpp"

namespace archrec::extract
{

const char* to_string(BuildType t)
{
    switch (t)
    {
        case BuildType::python_package: return "python_package";
        case BuildType::cpp_package: return "cpp_package";
        case BuildType::mixed: return "mixed";
    }
    return "python_package";
}

namespace
{

// Pulls <tag>value</tag> out of a manifest without a full XML pass.
std::string xml_tag_value(const std::string& text, const std::string& tag)
{
    const std::string open = "<" + tag + ">";
    const std::string close = "</" + tag + ">";
    const size_t b = text.find(open);
    if (b == std::string::npos) return "";
    const size_t e = text.find(close, b);
    if (e == std::string::npos) return "";
    return trim(text.substr(b + open.size(), e - b - open.size()));
}

BuildType detect_build_type(const std::string& manifest, const fs::path& pkg_root)
{
    const std::string declared = xml_tag_value(manifest, "build_type");
    const bool has_setup = fs::exists(pkg_root / "setup.py") || fs::exists(pkg_root / "setup.cfg");
    const bool has_cmake = fs::exists(pkg_root / "CMakeLists.txt");
    if (declared == "ament_python") return has_cmake ? BuildType::mixed : BuildType::python_package;
    if (declared == "ament_cmake" || declared == "cmake")
        return has_setup ? BuildType::mixed : BuildType::cpp_package;
    if (has_setup && has_cmake) return BuildType::mixed;
    if (has_cmake) return BuildType::cpp_package;
    return BuildType::python_package;
}

}  // namespace

std::vector<PackageDescriptor> scan_packages(const fs::path& repo_root, DiagnosticSink& sink)
{
    std::error_code ec;
    if (!fs::exists(repo_root, ec) || !fs::is_directory(repo_root, ec))
        throw InputError("repository root is not a readable directory: " +
                         repo_root.generic_string());

    const auto manifests = list_files(
        repo_root, [](const fs::path& p) { return p.filename() == "package.xml"; });

    std::vector<PackageDescriptor> out;
    for (const fs::path& manifest : manifests)
    {
        std::string text;
        try
        {
            text = read_file(manifest);
        }
        catch (const InputError& e)
        {
            sink.warning(repo_relative(repo_root, manifest), "manifest unreadable, package skipped");
            continue;
        }
        const std::string name = xml_tag_value(text, "name");
        if (name.empty() || !is_identifier(name))
        {
            sink.warning(repo_relative(repo_root, manifest),
                         "manifest does not declare a valid <name>, package skipped");
            continue;
        }
        PackageDescriptor d;
        d.package_name = name;
        d.manifest_path = manifest;
        d.root_path = manifest.parent_path();
        d.build_type = detect_build_type(text, d.root_path);
        out.push_back(std::move(d));
    }

    std::sort(out.begin(), out.end(),
              [](const PackageDescriptor& a, const PackageDescriptor& b)
              { return a.package_name < b.package_name; });
    return out;
}

}  // namespace archrec::extract
