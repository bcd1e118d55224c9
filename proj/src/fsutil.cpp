#include "archrec/fsutil.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "archrec/errors.hpp"

namespace archrec
{

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path.generic_string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + path.generic_string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("short write: " + path.generic_string());
}

static bool skipped_dir(const fs::path& name)
{
    const std::string n = name.generic_string();
    if (!n.empty() && n[0] == '.') return true;
    return n == "build" || n == "install" || n == "log" || n == "__pycache__" ||
           n == "node_modules";
}

std::vector<fs::path> list_files(const fs::path& root,
                                 const std::function<bool(const fs::path&)>& keep)
{
    std::vector<fs::path> out;
    if (!fs::exists(root)) return out;
    std::vector<fs::path> stack{root};
    while (!stack.empty())
    {
        fs::path dir = stack.back();
        stack.pop_back();
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(dir, ec))
        {
            const fs::path& p = entry.path();
            if (entry.is_directory())
            {
                if (!skipped_dir(p.filename())) stack.push_back(p);
            }
            else if (entry.is_regular_file() && keep(p))
            {
                out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const fs::path& a, const fs::path& b)
              { return a.generic_string() < b.generic_string(); });
    return out;
}

std::string repo_relative(const fs::path& root, const fs::path& p)
{
    std::error_code ec;
    fs::path rel = fs::relative(p, root, ec);
    if (ec || rel.empty()) return p.generic_string();
    return rel.generic_string();
}

}  // namespace archrec
