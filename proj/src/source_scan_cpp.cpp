// Compiled-node scanner: locates rclcpp node classes across headers and sources,
// pairs out-of-line method definitions, and extracts typed middleware calls.
#include <algorithm>
#include <map>
#include <set>

#include "archrec/source_scan.hpp"
#include "archrec/textutil.hpp"

namespace archrec::extract
{
namespace
{

// Removes // and /* */ comments while preserving string literals and layout.
std::string strip_cpp_comments(const std::string& text)
{
    std::string out;
    out.reserve(text.size());
    enum
    {
        code,
        line_comment,
        block_comment,
        string_lit,
        char_lit
    } state = code;
    for (size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        const char next = i + 1 < text.size() ? text[i + 1] : 0;
        switch (state)
        {
            case code:
                if (c == '/' && next == '/')
                {
                    state = line_comment;
                    ++i;
                }
                else if (c == '/' && next == '*')
                {
                    state = block_comment;
                    ++i;
                    out += ' ';
                }
                else
                {
                    if (c == '"')
                        state = string_lit;
                    else if (c == '\'')
                        state = char_lit;
                    out += c;
                }
                break;
            case line_comment:
                if (c == '\n')
                {
                    state = code;
                    out += c;
                }
                break;
            case block_comment:
                if (c == '*' && next == '/')
                {
                    state = code;
                    ++i;
                }
                else if (c == '\n')
                    out += c;
                break;
            case string_lit:
                out += c;
                if (c == '\\')
                {
                    if (i + 1 < text.size()) out += text[++i];
                }
                else if (c == '"')
                    state = code;
                break;
            case char_lit:
                out += c;
                if (c == '\\')
                {
                    if (i + 1 < text.size()) out += text[++i];
                }
                else if (c == '\'')
                    state = code;
                break;
        }
    }
    return out;
}

size_t matching_brace(const std::string& text, size_t open)
{
    int depth = 0;
    char quote = 0;
    for (size_t i = open; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quote)
        {
            if (c == '\\')
                ++i;
            else if (c == quote)
                quote = 0;
            continue;
        }
        if (c == '"' || c == '\'')
            quote = c;
        else if (c == '{')
            ++depth;
        else if (c == '}')
        {
            --depth;
            if (depth == 0) return i;
        }
    }
    return std::string::npos;
}

size_t matching_paren(const std::string& text, size_t open)
{
    int depth = 0;
    char quote = 0;
    for (size_t i = open; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quote)
        {
            if (c == '\\')
                ++i;
            else if (c == quote)
                quote = 0;
            continue;
        }
        if (c == '"' || c == '\'')
            quote = c;
        else if (c == '(')
            ++depth;
        else if (c == ')')
        {
            --depth;
            if (depth == 0) return i;
        }
    }
    return std::string::npos;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct ClassDecl
{
    std::string name;
    std::string file;        // rel path of declaring file
    size_t body_begin = 0;   // inside the braces
    size_t body_end = 0;
};

// class <Name> [final] : <bases...> {   with a node base among the bases
std::vector<ClassDecl> find_node_classes(const std::string& text, const std::string& file)
{
    std::vector<ClassDecl> out;
    size_t pos = 0;
    while ((pos = text.find("class", pos)) != std::string::npos)
    {
        const size_t kw = pos;
        pos += 5;
        if (kw > 0 && ident_char(text[kw - 1])) continue;
        if (kw + 5 < text.size() && ident_char(text[kw + 5])) continue;

        size_t i = kw + 5;
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        size_t name_end = i;
        while (name_end < text.size() && ident_char(text[name_end])) ++name_end;
        const std::string name = text.substr(i, name_end - i);
        if (name.empty()) continue;

        size_t j = name_end;
        // skip attribute-ish tokens like "final"
        while (j < text.size() && text[j] != ':' && text[j] != '{' && text[j] != ';' &&
               text[j] != '(')
            ++j;
        if (j >= text.size() || text[j] != ':') continue;
        const size_t brace = text.find('{', j);
        if (brace == std::string::npos) continue;
        const std::string bases = text.substr(j + 1, brace - j - 1);
        if (bases.find("rclcpp::Node") == std::string::npos &&
            bases.find("rclcpp::LifecycleNode") == std::string::npos)
            continue;
        const size_t close = matching_brace(text, brace);
        if (close == std::string::npos) continue;

        ClassDecl d;
        d.name = name;
        d.file = file;
        d.body_begin = brace + 1;
        d.body_end = close;
        out.push_back(std::move(d));
    }
    return out;
}

// Regions of text belonging to one class: in-class body plus Name::method bodies.
struct Region
{
    const std::string* text;
    std::string file;
    size_t begin;
    size_t end;
};

std::map<std::string, std::string> scan_cpp_constants(const std::string& text)
{
    std::map<std::string, std::string> out;
    size_t pos = 0;
    while ((pos = text.find('=', pos)) != std::string::npos)
    {
        const size_t eq = pos++;
        // NAME [optional []] = "literal"
        size_t v = eq + 1;
        while (v < text.size() && std::isspace(static_cast<unsigned char>(text[v]))) ++v;
        if (v >= text.size() || text[v] != '"') continue;
        const size_t close = text.find('"', v + 1);
        if (close == std::string::npos) continue;

        size_t n_end = eq;
        while (n_end > 0 && std::isspace(static_cast<unsigned char>(text[n_end - 1]))) --n_end;
        if (n_end >= 2 && text[n_end - 1] == ']' && text[n_end - 2] == '[') n_end -= 2;
        size_t n_begin = n_end;
        while (n_begin > 0 && ident_char(text[n_begin - 1])) --n_begin;
        const std::string name = text.substr(n_begin, n_end - n_begin);
        if (is_identifier(name)) out.emplace(name, text.substr(v + 1, close - v - 1));
    }
    return out;
}

std::vector<std::string> split_cpp_args(const std::string& body)
{
    std::vector<std::string> args;
    std::string cur;
    int depth = 0;
    char quote = 0;
    for (size_t i = 0; i < body.size(); ++i)
    {
        const char c = body[i];
        if (quote)
        {
            cur += c;
            if (c == '\\' && i + 1 < body.size())
                cur += body[++i];
            else if (c == quote)
                quote = 0;
            continue;
        }
        switch (c)
        {
            case '"':
            case '\'':
                quote = c;
                cur += c;
                break;
            case '(':
            case '[':
            case '{':
            case '<':
                ++depth;
                cur += c;
                break;
            case ')':
            case ']':
            case '}':
            case '>':
                --depth;
                cur += c;
                break;
            case ',':
                if (depth == 0)
                {
                    args.push_back(trim(cur));
                    cur.clear();
                }
                else
                    cur += c;
                break;
            default:
                cur += c;
        }
    }
    if (!trim(cur).empty()) args.push_back(trim(cur));
    return args;
}

std::string cpp_callback_name(const std::string& expr, DiagnosticSink& sink,
                              const std::string& where)
{
    std::string e = trim(expr);
    if (e.empty()) return "";
    if (e.front() == '[')
    {
        sink.warning(where, "callback is a lambda; no handler identifier recoverable");
        return "(lambda)";
    }
    if (e.starts_with("std::bind(") || e.starts_with("bind("))
    {
        const size_t open = e.find('(');
        const auto args = split_cpp_args(e.substr(open + 1, e.rfind(')') - open - 1));
        if (!args.empty()) e = args[0];
    }
    // &Class::method or Class::method or method
    while (!e.empty() && (e.front() == '&' || std::isspace(static_cast<unsigned char>(e.front()))))
        e = e.substr(1);
    const size_t sep = e.rfind("::");
    std::string last = sep == std::string::npos ? e : e.substr(sep + 2);
    const size_t paren = last.find('(');
    if (paren != std::string::npos) last = last.substr(0, paren);
    last = trim(last);
    return is_identifier(last) ? last : "";
}

struct CppNameResolution
{
    std::string value;
    bool unresolved = false;
};

CppNameResolution resolve_cpp_name(const std::string& expr,
                                   const std::map<std::string, std::string>& consts)
{
    const std::string e = trim(expr);
    if (e.size() >= 2 && e.front() == '"' && e.back() == '"' &&
        e.find('"', 1) == e.size() - 1)
        return {e.substr(1, e.size() - 2), false};
    auto it = consts.find(e);
    if (it != consts.end()) return {it->second, false};
    return {e, true};
}

void scan_region_ports(const Region& r, const std::map<std::string, std::string>& consts,
                       std::vector<CommunicationPort>& ports, DiagnosticSink& sink)
{
    static const std::vector<std::pair<std::string, PortKind>> methods = {
        {"create_publisher", PortKind::publisher},
        {"create_subscription", PortKind::subscriber},
        {"create_service", PortKind::service_server},
        {"create_client", PortKind::service_client},
    };
    const std::string& text = *r.text;
    for (const auto& [method, kind] : methods)
    {
        size_t pos = r.begin;
        while ((pos = text.find(method, pos)) != std::string::npos && pos < r.end)
        {
            const size_t at = pos;
            pos += method.size();
            if (at > 0 && ident_char(text[at - 1])) continue;
            size_t i = at + method.size();
            while (i < r.end && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (i >= r.end || text[i] != '<') continue;
            // template argument, balanced <>
            int depth = 0;
            size_t t_end = i;
            for (; t_end < r.end; ++t_end)
            {
                if (text[t_end] == '<') ++depth;
                if (text[t_end] == '>' && --depth == 0) break;
            }
            if (t_end >= r.end) continue;
            const std::string type_expr = text.substr(i + 1, t_end - i - 1);
            size_t p = t_end + 1;
            while (p < r.end && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
            if (p >= r.end || text[p] != '(') continue;
            const size_t close = matching_paren(text, p);
            if (close == std::string::npos || close > r.end)
            {
                sink.warning(r.file, "unbalanced " + method + " call; skipped");
                continue;
            }
            const auto args = split_cpp_args(text.substr(p + 1, close - p - 1));

            const std::string interface = normalize_interface_type(type_expr);
            if (interface.empty())
            {
                sink.warning(r.file, "cannot normalize interface type '" + type_expr +
                                         "'; port skipped");
                continue;
            }
            CommunicationPort port;
            port.kind = kind;
            port.interface_type = interface;
            const CppNameResolution name =
                resolve_cpp_name(args.empty() ? "" : args[0], consts);
            port.declared_name = name.value;
            port.unresolved_name = name.unresolved;
            if (name.unresolved)
                sink.warning(r.file, "topic/service name is not a string literal: '" +
                                         name.value + "'");
            if (kind == PortKind::subscriber)
            {
                std::string cb =
                    args.size() > 2 ? cpp_callback_name(args[2], sink, r.file) : "";
                if (cb.empty())
                {
                    sink.warning(r.file, "missing subscriber callback");
                    cb = "(unknown)";
                }
                port.callback_name = cb;
            }
            else if (kind == PortKind::service_server)
            {
                std::string cb =
                    args.size() > 1 ? cpp_callback_name(args[1], sink, r.file) : "";
                if (cb.empty())
                {
                    sink.warning(r.file, "missing service handler");
                    cb = "(unknown)";
                }
                port.callback_name = cb;
            }
            ports.push_back(std::move(port));
        }
    }
}

void find_node_name(const Region& r, const std::map<std::string, std::string>& consts,
                    std::optional<std::string>& node_name)
{
    if (node_name) return;
    const std::string& text = *r.text;
    for (const std::string& pat : {std::string("Node("), std::string("Node{")})
    {
        size_t pos = r.begin;
        while ((pos = text.find(pat, pos)) != std::string::npos && pos < r.end)
        {
            const size_t at = pos;
            pos += pat.size();
            if (at > 0 && ident_char(text[at - 1]))
            {
                // allow rclcpp::Node( but not MyNode(
                if (!(at >= 2 && text[at - 2] == ':' && text[at - 1] == ':')) continue;
            }
            size_t i = at + pat.size();
            while (i < r.end && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (i >= r.end || text[i] != '"') continue;
            const size_t close = text.find('"', i + 1);
            if (close == std::string::npos || close > r.end) continue;
            node_name = text.substr(i + 1, close - i - 1);
            return;
        }
    }
    (void)consts;
}

}  // namespace

std::vector<ScannedNodeClass> scan_cpp_sources(
    const std::vector<std::pair<std::string, std::string>>& files, DiagnosticSink& sink)
{
    std::vector<std::pair<std::string, std::string>> stripped;
    stripped.reserve(files.size());
    for (const auto& [path, text] : files) stripped.emplace_back(path, strip_cpp_comments(text));

    // pass 1: class declarations
    std::vector<ClassDecl> decls;
    for (const auto& [path, text] : stripped)
        for (ClassDecl& d : find_node_classes(text, path)) decls.push_back(std::move(d));

    // pass 2: per-class regions (class body + out-of-line method definitions)
    std::vector<ScannedNodeClass> out;
    for (const ClassDecl& d : decls)
    {
        ScannedNodeClass c;
        c.class_name = d.name;
        c.compile_type = CompileType::cpp;

        std::vector<Region> regions;
        std::set<std::string> source_files;
        for (const auto& [path, text] : stripped)
        {
            if (path == d.file)
                regions.push_back({&text, path, d.body_begin, d.body_end});
            const std::string marker = d.name + "::";
            size_t pos = 0;
            bool method_here = false;
            while ((pos = text.find(marker, pos)) != std::string::npos)
            {
                const size_t at = pos;
                pos += marker.size();
                if (at > 0 && (ident_char(text[at - 1]) || text[at - 1] == ':')) continue;
                // definition header: Name::member(...) ... {
                const size_t paren = text.find('(', at);
                if (paren == std::string::npos) continue;
                const size_t paren_close = matching_paren(text, paren);
                if (paren_close == std::string::npos) continue;
                size_t brace = paren_close + 1;
                while (brace < text.size() && text[brace] != '{' && text[brace] != ';')
                {
                    if (text[brace] == '(')
                    {
                        const size_t c2 = matching_paren(text, brace);
                        if (c2 == std::string::npos) break;
                        brace = c2 + 1;
                        continue;
                    }
                    ++brace;
                }
                if (brace >= text.size() || text[brace] != '{') continue;
                const size_t body_close = matching_brace(text, brace);
                if (body_close == std::string::npos) continue;
                // include the init list between ')' and '{' for node-name detection
                regions.push_back({&text, path, paren_close, body_close});
                method_here = true;
                pos = body_close;
            }
            if (method_here && path != d.file) source_files.insert(path);
        }

        const bool header_decl = d.file.ends_with(".hpp") || d.file.ends_with(".h") ||
                                 d.file.ends_with(".hh") || d.file.ends_with(".hxx");
        if (header_decl) c.header_files.push_back(d.file);
        if (!header_decl) source_files.insert(d.file);
        c.source_files.assign(source_files.begin(), source_files.end());
        std::sort(c.source_files.begin(), c.source_files.end());
        if (c.source_files.empty()) c.source_files.push_back(d.file);  // header-only class

        for (const Region& r : regions)
        {
            const auto consts = scan_cpp_constants(*r.text);
            find_node_name(r, consts, c.node_name);
            scan_region_ports(r, consts, c.ports, sink);
        }
        out.push_back(std::move(c));
    }

    std::sort(out.begin(), out.end(),
              [](const ScannedNodeClass& a, const ScannedNodeClass& b)
              { return a.class_name < b.class_name; });
    return out;
}

}  // namespace archrec::extract
