// Filesystem helpers: deterministic enumeration, repo-relative paths, whole-file IO.
#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace archrec
{

namespace fs = std::filesystem;

// Reads a whole file in binary mode; throws InputError when unreadable.
std::string read_file(const fs::path& path);

// Writes bytes exactly as given, creating parent directories.
void write_file(const fs::path& path, const std::string& content);

// Recursive listing, lexicographically sorted by generic path string.
// Skips hidden entries and common build/install output directories.
std::vector<fs::path> list_files(const fs::path& root,
                                 const std::function<bool(const fs::path&)>& keep);

// Forward-slash relative path of `p` under `root` (generic form for stable artifacts).
std::string repo_relative(const fs::path& root, const fs::path& p);

}  // namespace archrec
