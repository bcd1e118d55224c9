#include "archrec/node_extract.hpp"

#include <algorithm>
#include <set>

#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/source_scan.hpp"
#include "archrec/textutil.hpp"

namespace archrec::extract
{

const AtomicRosNodeClassifier* NodeInventory::find(const std::string& id) const
{
    for (const PackageEntry& p : packages)
        for (const AtomicRosNodeClassifier& c : p.classifiers)
            if (c.id == id) return &c;
    return nullptr;
}

size_t NodeInventory::classifier_count() const
{
    size_t n = 0;
    for (const PackageEntry& p : packages) n += p.classifiers.size();
    return n;
}

namespace
{

bool is_python_file(const fs::path& p) { return p.extension() == ".py"; }

bool is_cpp_header(const fs::path& p)
{
    const std::string e = p.extension().generic_string();
    return e == ".hpp" || e == ".h" || e == ".hh" || e == ".hxx";
}

bool is_cpp_source(const fs::path& p)
{
    const std::string e = p.extension().generic_string();
    return e == ".cpp" || e == ".cc" || e == ".cxx";
}

bool is_launch_script(const fs::path& p)
{
    return p.generic_string().ends_with(".launch.py") ||
           p.parent_path().filename() == "launch";
}

// entry name -> "module.path:function"
std::map<std::string, std::string> parse_entry_points(const std::string& text)
{
    std::map<std::string, std::string> out;
    size_t pos = 0;
    while ((pos = text.find('=', pos)) != std::string::npos)
    {
        // pattern: 'name = module:function' inside a quoted string
        size_t begin = text.rfind('\'', pos);
        const size_t begin2 = text.rfind('"', pos);
        char q = '\'';
        if (begin == std::string::npos || (begin2 != std::string::npos && begin2 > begin))
        {
            begin = begin2;
            q = '"';
        }
        ++pos;
        if (begin == std::string::npos) continue;
        const size_t end = text.find(q, pos);
        if (end == std::string::npos) continue;
        const std::string entry = text.substr(begin + 1, end - begin - 1);
        const size_t eq = entry.find('=');
        const size_t colon = entry.find(':');
        if (eq == std::string::npos || colon == std::string::npos || colon < eq) continue;
        const std::string name = trim(entry.substr(0, eq));
        const std::string target = trim(entry.substr(eq + 1));
        if (is_identifier(name) && !target.empty()) out.emplace(name, target);
    }
    return out;
}

// setup.cfg style:  name = module:function  under [options.entry_points]
std::map<std::string, std::string> parse_setup_cfg(const std::string& text)
{
    std::map<std::string, std::string> out;
    bool in_section = false;
    for (const std::string& raw : split(text, '\n'))
    {
        const std::string line = trim(raw);
        if (line.starts_with("["))
        {
            in_section = line.starts_with("[options.entry_points");
            continue;
        }
        if (!in_section) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string name = trim(line.substr(0, eq));
        const std::string target = trim(line.substr(eq + 1));
        if (is_identifier(name) && target.find(':') != std::string::npos)
            out.emplace(name, target);
    }
    return out;
}

// Names of classes (or functions) constructed/called inside one function body.
std::vector<std::string> constructed_names(const std::string& module_text,
                                           const std::string& function)
{
    std::vector<std::string> out;
    const std::vector<std::string> lines = split(module_text, '\n');
    bool in_func = false;
    int func_indent = 0;
    for (const std::string& raw : lines)
    {
        const std::string line = trim(raw);
        int indent = 0;
        for (char c : raw)
        {
            if (c == ' ')
                ++indent;
            else
                break;
        }
        if (line.starts_with("def "))
        {
            const std::string name = trim(line.substr(4, line.find('(') - 4));
            if (name == function)
            {
                in_func = true;
                func_indent = indent;
                continue;
            }
            if (in_func && indent <= func_indent) in_func = false;
        }
        else if (in_func && !line.empty() && indent <= func_indent)
            in_func = false;
        if (!in_func) continue;

        for (size_t i = 0; i + 1 < line.size(); ++i)
        {
            if (line[i + 1] != '(') continue;
            size_t b = i + 1;
            while (b > 0 && (std::isalnum(static_cast<unsigned char>(line[b - 1])) ||
                             line[b - 1] == '_'))
                --b;
            const std::string name = line.substr(b, i + 1 - b);
            if (!name.empty() && std::isupper(static_cast<unsigned char>(name[0])))
                out.push_back(name);
        }
    }
    return out;
}

std::map<std::string, std::string> resolve_python_executables(const PackageDescriptor& pkg,
                                                              DiagnosticSink& sink)
{
    std::map<std::string, std::string> entry_points;
    for (const char* f : {"setup.py", "setup.cfg"})
    {
        const fs::path setup = pkg.root_path / f;
        if (!fs::exists(setup)) continue;
        const std::string text = read_file(setup);
        auto found = std::string(f) == "setup.py" ? parse_entry_points(text)
                                                  : parse_setup_cfg(text);
        entry_points.merge(found);
    }
    if (entry_points.empty()) return {};

    std::map<std::string, std::string> exec_of_class;
    for (const auto& [exec_name, target] : entry_points)
    {
        const size_t colon = target.find(':');
        const std::string module = trim(target.substr(0, colon));
        const std::string function = trim(target.substr(colon + 1));
        fs::path module_file = pkg.root_path;
        for (const std::string& seg : split(module, '.')) module_file /= seg;
        module_file += ".py";
        if (!fs::exists(module_file))
        {
            sink.warning(pkg.package_name,
                         "entry point '" + exec_name + "' references missing module " + module);
            continue;
        }
        const std::string text = read_file(module_file);
        for (const std::string& cls : constructed_names(text, function))
        {
            auto [it, inserted] = exec_of_class.emplace(cls, exec_name);
            if (!inserted && it->second != exec_name)
            {
                // scalar execution field: keep the lexicographically first entry point
                if (exec_name < it->second)
                {
                    sink.warning(pkg.package_name, "class " + cls + " reachable from multiple "
                                                   "entry points; keeping '" + exec_name +
                                                   "', dropping '" + it->second + "'");
                    it->second = exec_name;
                }
                else
                    sink.warning(pkg.package_name, "class " + cls + " reachable from multiple "
                                                   "entry points; keeping '" + it->second +
                                                   "', dropping '" + exec_name + "'");
            }
        }
        // functions constructing nodes directly are classifiers themselves
        exec_of_class.emplace(function, exec_name);
    }
    return exec_of_class;
}

std::map<std::string, std::string> resolve_cpp_executables(const PackageDescriptor& pkg,
                                                           const fs::path& repo_root,
                                                           DiagnosticSink& sink)
{
    const fs::path cmake = pkg.root_path / "CMakeLists.txt";
    if (!fs::exists(cmake)) return {};
    std::string text;
    try
    {
        text = read_file(cmake);
    }
    catch (const InputError&)
    {
        sink.warning(pkg.package_name, "build file unreadable; no executables resolved");
        return {};
    }

    // target -> source files listed in add_executable
    std::map<std::string, std::vector<std::string>> target_sources;
    size_t pos = 0;
    while ((pos = text.find("add_executable", pos)) != std::string::npos)
    {
        const size_t open = text.find('(', pos);
        pos += 14;
        if (open == std::string::npos) continue;
        const size_t close = text.find(')', open);
        if (close == std::string::npos)
        {
            sink.warning(pkg.package_name, "unbalanced add_executable in CMakeLists.txt");
            continue;
        }
        std::vector<std::string> tokens;
        std::string cur;
        for (size_t i = open + 1; i < close; ++i)
        {
            const char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c)))
            {
                if (!cur.empty()) tokens.push_back(cur);
                cur.clear();
            }
            else
                cur += c;
        }
        if (!cur.empty()) tokens.push_back(cur);
        if (tokens.empty()) continue;
        const std::string target = tokens[0];
        for (size_t i = 1; i < tokens.size(); ++i)
        {
            if (tokens[i].find("${") != std::string::npos)
            {
                sink.warning(pkg.package_name,
                             "unresolved variable in add_executable(" + target + ")");
                continue;
            }
            target_sources[target].push_back(tokens[i]);
        }
    }

    // plugin registrations: rclcpp_components_register_node(<lib> PLUGIN "ns::Class" EXECUTABLE <exec>)
    std::map<std::string, std::string> exec_of_class;
    pos = 0;
    while ((pos = text.find("rclcpp_components_register_node", pos)) != std::string::npos)
    {
        const size_t open = text.find('(', pos);
        pos += 10;
        if (open == std::string::npos) continue;
        const size_t close = text.find(')', open);
        if (close == std::string::npos) continue;
        const std::string body = text.substr(open + 1, close - open - 1);
        const size_t plugin = body.find("PLUGIN");
        const size_t execu = body.find("EXECUTABLE");
        if (plugin == std::string::npos || execu == std::string::npos) continue;
        auto quoted_after = [&](size_t at) -> std::string
        {
            const size_t q1 = body.find('"', at);
            if (q1 == std::string::npos) return "";
            const size_t q2 = body.find('"', q1 + 1);
            if (q2 == std::string::npos) return "";
            return body.substr(q1 + 1, q2 - q1 - 1);
        };
        const std::string plugin_class = quoted_after(plugin);
        std::string exec_name = quoted_after(execu);
        if (exec_name.empty())
        {
            // EXECUTABLE may be an unquoted token
            std::string tail = trim(body.substr(execu + 10));
            const size_t sp = tail.find_first_of(" \t\n");
            exec_name = sp == std::string::npos ? tail : tail.substr(0, sp);
        }
        if (plugin_class.empty() || exec_name.empty()) continue;
        const auto parts = split(plugin_class, ':');
        exec_of_class.emplace(parts.back(), exec_name);
    }

    // attribute each target to node classes declared in its listed sources
    std::map<std::string, std::set<std::string>> classes_in_file;  // rel path -> classes
    {
        std::vector<std::pair<std::string, std::string>> files;
        for (const fs::path& p : list_files(pkg.root_path,
                                            [](const fs::path& f)
                                            { return is_cpp_header(f) || is_cpp_source(f); }))
            files.emplace_back(repo_relative(repo_root, p), read_file(p));
        DiagnosticSink scratch;
        for (const ScannedNodeClass& c : scan_cpp_sources(files, scratch))
            for (const std::string& f : c.source_files) classes_in_file[f].insert(c.class_name);
    }

    std::map<std::string, std::set<std::string>> executions_of_class;
    for (const auto& [target, sources] : target_sources)
    {
        for (const std::string& src : sources)
        {
            const std::string rel = repo_relative(repo_root, pkg.root_path / src);
            auto it = classes_in_file.find(rel);
            if (it == classes_in_file.end()) continue;
            for (const std::string& cls : it->second) executions_of_class[cls].insert(target);
        }
    }
    for (const auto& [cls, targets] : executions_of_class)
    {
        if (targets.size() > 1)
        {
            std::string all;
            for (const std::string& t : targets) all += (all.empty() ? "" : ", ") + t;
            sink.warning(pkg.package_name, "class " + cls + " built into multiple targets (" +
                                               all + "); keeping the first");
        }
        exec_of_class.emplace(cls, *targets.begin());
    }
    return exec_of_class;
}

}  // namespace

std::vector<AtomicRosNodeClassifier> extract_atomic_nodes(const PackageDescriptor& package,
                                                          const fs::path& repo_root,
                                                          DiagnosticSink& sink)
{
    std::vector<ScannedNodeClass> scanned;

    if (package.build_type != BuildType::cpp_package)
    {
        for (const fs::path& p : list_files(package.root_path, is_python_file))
        {
            if (is_launch_script(p)) continue;  // launch files belong to the launch stage
            const std::string rel = repo_relative(repo_root, p);
            std::string text;
            try
            {
                text = read_file(p);
            }
            catch (const InputError&)
            {
                sink.warning(rel, "source unreadable; file skipped");
                continue;
            }
            for (ScannedNodeClass& c : scan_python_source(text, rel, sink))
                scanned.push_back(std::move(c));
        }
    }
    if (package.build_type != BuildType::python_package)
    {
        std::vector<std::pair<std::string, std::string>> files;
        for (const fs::path& p : list_files(package.root_path,
                                            [](const fs::path& f)
                                            { return is_cpp_header(f) || is_cpp_source(f); }))
        {
            const std::string rel = repo_relative(repo_root, p);
            try
            {
                files.emplace_back(rel, read_file(p));
            }
            catch (const InputError&)
            {
                sink.warning(rel, "source unreadable; file skipped");
            }
        }
        for (ScannedNodeClass& c : scan_cpp_sources(files, sink)) scanned.push_back(std::move(c));
    }

    const auto executions = resolve_executables(package, sink);

    std::vector<AtomicRosNodeClassifier> out;
    for (ScannedNodeClass& s : scanned)
    {
        AtomicRosNodeClassifier c;
        c.class_name = s.class_name;
        c.node_name = s.node_name;
        c.header_file_paths = s.header_files;
        c.source_file_paths = s.source_files;
        c.compile_type = s.compile_type;
        c.ports = std::move(s.ports);
        auto it = executions.find(s.class_name);
        if (it != executions.end())
            c.execution = it->second;
        else
            sink.warning(package.package_name,
                         "class " + s.class_name + " is not reachable from any entry point");
        if (s.direct_construction)
            c.description = "Entry function constructing a node directly.";
        out.push_back(std::move(c));
    }

    std::sort(out.begin(), out.end(),
              [](const AtomicRosNodeClassifier& a, const AtomicRosNodeClassifier& b)
              { return a.class_name < b.class_name; });
    return out;
}

std::map<std::string, std::string> resolve_executables(const PackageDescriptor& package,
                                                       DiagnosticSink& sink)
{
    std::map<std::string, std::string> out;
    if (package.build_type != BuildType::cpp_package)
        out.merge(resolve_python_executables(package, sink));
    if (package.build_type != BuildType::python_package)
    {
        // repo root is unknown here; paths stay package-relative for attribution
        auto cpp = resolve_cpp_executables(package, package.root_path, sink);
        out.merge(cpp);
    }
    return out;
}

std::string default_description(const AtomicRosNodeClassifier& c)
{
    size_t pubs = 0, subs = 0, servers = 0, clients = 0;
    for (const CommunicationPort& p : c.ports)
    {
        switch (p.kind)
        {
            case PortKind::publisher: ++pubs; break;
            case PortKind::subscriber: ++subs; break;
            case PortKind::service_server: ++servers; break;
            case PortKind::service_client: ++clients; break;
        }
    }
    std::string d = "ROS 2 node class " + c.class_name;
    if (c.node_name) d += " (node '" + *c.node_name + "')";
    std::vector<std::string> parts;
    if (pubs) parts.push_back("publishes " + std::to_string(pubs) + " topic(s)");
    if (subs) parts.push_back("subscribes to " + std::to_string(subs) + " topic(s)");
    if (servers) parts.push_back("provides " + std::to_string(servers) + " service(s)");
    if (clients) parts.push_back("calls " + std::to_string(clients) + " service(s)");
    if (parts.empty())
        d += " with no statically visible communication interfaces.";
    else
        d += ": " + join(parts, "; ") + ".";
    return d;
}

NodeInventory build_inventory(const fs::path& repo_root, DiagnosticSink& sink)
{
    NodeInventory inv;
    int ordinal = 1;
    for (const PackageDescriptor& pkg : scan_packages(repo_root, sink))
    {
        NodeInventory::PackageEntry entry;
        entry.package_name = pkg.package_name;
        entry.classifiers = extract_atomic_nodes(pkg, repo_root, sink);
        for (AtomicRosNodeClassifier& c : entry.classifiers)
        {
            c.id = canonical_id("arc", ordinal++);
            if (c.description.empty()) c.description = default_description(c);
        }
        inv.packages.push_back(std::move(entry));
    }
    return inv;
}

std::vector<Violation> validate_inventory(const NodeInventory& inv)
{
    std::vector<Violation> out;
    std::set<std::string> pkg_names, ids;
    for (const auto& p : inv.packages)
    {
        if (!pkg_names.insert(p.package_name).second)
            out.push_back({p.package_name, "package_name duplicated in inventory"});
        for (const AtomicRosNodeClassifier& c : p.classifiers)
        {
            if (!ids.insert(c.id).second)
                out.push_back({c.id, "classifier id duplicated across inventory"});
            auto v = validate_atomic(c);
            out.insert(out.end(), v.begin(), v.end());
        }
    }
    return out;
}

std::string emit_node_inventory(const NodeInventory& inv)
{
    const auto violations = validate_inventory(inv);
    if (!violations.empty())
    {
        std::string msg = "inventory invariant violations:";
        for (const Violation& v : violations) msg += "\n  " + v.element + ": " + v.invariant;
        throw AnalysisError(msg);
    }
    ordered_json j;
    j["list_packages"] = ordered_json::array();
    for (const auto& p : inv.packages)
    {
        ordered_json pj;
        pj["package_name"] = p.package_name;
        pj["list_atomic_ros_node_classifiers"] = ordered_json::array();
        for (const AtomicRosNodeClassifier& c : p.classifiers)
            pj["list_atomic_ros_node_classifiers"].push_back(atomic_to_json(c));
        j["list_packages"].push_back(std::move(pj));
    }
    return j.dump(2) + "\n";
}

NodeInventory load_node_inventory(const std::string& text)
{
    NodeInventory inv;
    ordered_json j;
    try
    {
        j = ordered_json::parse(text);
    }
    catch (const nlohmann::json::exception& e)
    {
        throw AnalysisError(std::string("node inventory is not valid JSON: ") + e.what());
    }
    if (!j.contains("list_packages"))
        throw AnalysisError("node inventory missing list_packages");
    for (const auto& pj : j.at("list_packages"))
    {
        NodeInventory::PackageEntry p;
        p.package_name = pj.at("package_name").get<std::string>();
        for (const auto& cj : pj.at("list_atomic_ros_node_classifiers"))
            p.classifiers.push_back(atomic_from_json(cj));
        inv.packages.push_back(std::move(p));
    }
    return inv;
}

}  // namespace archrec::extract
