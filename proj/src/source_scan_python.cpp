// Script-node scanner: indentation-scoped class blocks, import-resolved message
// types, balanced-call extraction for middleware creation calls.
#include <algorithm>
#include <map>

#include "archrec/source_scan.hpp"
#include "archrec/textutil.hpp"

namespace archrec::extract
{
namespace
{

struct Line
{
    std::string text;   // comment stripped
    int indent = -1;    // -1 for blank/comment-only lines
};

std::string strip_py_comment(const std::string& line)
{
    char quote = 0;
    for (size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quote)
        {
            if (c == quote && (i == 0 || line[i - 1] != '\\')) quote = 0;
        }
        else if (c == '\'' || c == '"')
            quote = c;
        else if (c == '#')
            return line.substr(0, i);
    }
    return line;
}

int indent_of(const std::string& s)
{
    int n = 0;
    for (char c : s)
    {
        if (c == ' ')
            ++n;
        else if (c == '\t')
            n += 8;
        else
            return n;
    }
    return -1;  // blank
}

std::vector<Line> prepare(const std::string& text)
{
    std::vector<Line> out;
    std::string cur;
    for (char c : text)
    {
        if (c == '\n')
        {
            Line l;
            l.text = strip_py_comment(cur);
            l.indent = indent_of(l.text);
            out.push_back(std::move(l));
            cur.clear();
        }
        else if (c != '\r')
            cur += c;
    }
    if (!cur.empty())
    {
        Line l;
        l.text = strip_py_comment(cur);
        l.indent = indent_of(l.text);
        out.push_back(std::move(l));
    }
    return out;
}

// import map: local symbol -> <pkg>/(msg|srv)/<Type>
std::map<std::string, std::string> scan_imports(const std::vector<Line>& lines)
{
    std::map<std::string, std::string> out;
    for (const Line& l : lines)
    {
        const std::string t = trim(l.text);
        if (!t.starts_with("from ")) continue;
        const size_t imp = t.find(" import ");
        if (imp == std::string::npos) continue;
        const std::string module = trim(t.substr(5, imp - 5));
        const auto mod_parts = split(module, '.');
        if (mod_parts.size() != 2) continue;
        const std::string& category = mod_parts[1];
        if (category != "msg" && category != "srv") continue;
        for (const std::string& item : split(t.substr(imp + 8), ','))
        {
            std::string name = trim(item);
            std::string local = name;
            const size_t as = name.find(" as ");
            if (as != std::string::npos)
            {
                local = trim(name.substr(as + 4));
                name = trim(name.substr(0, as));
            }
            if (is_identifier(name) && is_identifier(local))
                out[local] = mod_parts[0] + "/" + category + "/" + name;
        }
    }
    return out;
}

// NAME = 'literal' simple assignments (module and class level), first one wins.
std::map<std::string, std::string> scan_constants(const std::vector<Line>& lines)
{
    std::map<std::string, std::string> out;
    for (const Line& l : lines)
    {
        const std::string t = trim(l.text);
        const size_t eq = t.find('=');
        if (eq == std::string::npos || eq + 1 >= t.size()) continue;
        if (t[eq + 1] == '=' || (eq > 0 && (t[eq - 1] == '=' || t[eq - 1] == '!' ||
                                            t[eq - 1] == '<' || t[eq - 1] == '>')))
            continue;
        const std::string name = trim(t.substr(0, eq));
        std::string value;
        if (is_identifier(name) && unquote(trim(t.substr(eq + 1)), value))
            out.emplace(name, value);
    }
    return out;
}

// Joins lines from (line, col) until parentheses balance; returns the call text.
std::string balanced_call(const std::vector<Line>& lines, size_t line_idx, size_t col)
{
    std::string out;
    int depth = 0;
    char quote = 0;
    for (size_t i = line_idx; i < lines.size(); ++i)
    {
        const std::string& s = lines[i].text;
        for (size_t j = (i == line_idx ? col : 0); j < s.size(); ++j)
        {
            const char c = s[j];
            out += c;
            if (quote)
            {
                if (c == quote && s[j - 1] != '\\') quote = 0;
                continue;
            }
            if (c == '\'' || c == '"')
                quote = c;
            else if (c == '(' || c == '[' || c == '{')
                ++depth;
            else if (c == ')' || c == ']' || c == '}')
            {
                --depth;
                if (depth == 0) return out;
            }
        }
        out += ' ';
    }
    return out;  // unbalanced; caller treats as unparseable
}

// Splits "f(a, b, c)" argument text at top-level commas.
std::vector<std::string> split_args(const std::string& call)
{
    const size_t open = call.find('(');
    if (open == std::string::npos || call.back() != ')') return {};
    const std::string body = call.substr(open + 1, call.size() - open - 2);
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
            if (c == quote && body[i - 1] != '\\') quote = 0;
            continue;
        }
        if (c == '\'' || c == '"')
        {
            quote = c;
            cur += c;
        }
        else if (c == '(' || c == '[' || c == '{')
        {
            ++depth;
            cur += c;
        }
        else if (c == ')' || c == ']' || c == '}')
        {
            --depth;
            cur += c;
        }
        else if (c == ',' && depth == 0)
        {
            args.push_back(trim(cur));
            cur.clear();
        }
        else
            cur += c;
    }
    if (!trim(cur).empty()) args.push_back(trim(cur));
    return args;
}

struct CallArgs
{
    std::vector<std::string> positional;
    std::map<std::string, std::string> keyword;

    std::string get(size_t pos, const std::string& kw) const
    {
        auto it = keyword.find(kw);
        if (it != keyword.end()) return it->second;
        if (pos < positional.size()) return positional[pos];
        return "";
    }
};

CallArgs interpret_args(const std::vector<std::string>& raw)
{
    CallArgs out;
    for (const std::string& a : raw)
    {
        const size_t eq = a.find('=');
        // keyword args only when lhs is a bare identifier and '=' is not '=='
        if (eq != std::string::npos && eq + 1 < a.size() && a[eq + 1] != '=' &&
            is_identifier(trim(a.substr(0, eq))))
            out.keyword[trim(a.substr(0, eq))] = trim(a.substr(eq + 1));
        else
            out.positional.push_back(a);
    }
    return out;
}

std::string resolve_callback(const std::string& expr, DiagnosticSink& sink,
                             const std::string& where)
{
    std::string e = trim(expr);
    if (e.empty()) return "";
    if (e.starts_with("lambda"))
    {
        sink.warning(where, "callback is a lambda; no handler identifier recoverable");
        return "(lambda)";
    }
    if (e.starts_with("functools.partial(") || e.starts_with("partial("))
    {
        const auto args = split_args(e);
        if (!args.empty()) e = args[0];
    }
    const auto parts = split(e, '.');
    std::string last = parts.back();
    const size_t paren = last.find('(');
    if (paren != std::string::npos) last = last.substr(0, paren);
    return is_identifier(last) ? last : "";
}

struct NameResolution
{
    std::string value;
    bool unresolved = false;
};

NameResolution resolve_declared_name(const std::string& expr,
                                     const std::map<std::string, std::string>& consts)
{
    std::string literal;
    if (unquote(trim(expr), literal)) return {literal, false};
    std::string e = trim(expr);
    if (e.starts_with("self.")) e = e.substr(5);
    auto it = consts.find(e);
    if (it != consts.end()) return {it->second, false};
    return {trim(expr), true};
}

void parse_create_call(const std::string& method, const std::string& call_text,
                       const std::map<std::string, std::string>& imports,
                       const std::map<std::string, std::string>& consts,
                       const std::string& where, std::vector<CommunicationPort>& ports,
                       DiagnosticSink& sink)
{
    const CallArgs args = interpret_args(split_args(call_text));

    PortKind kind;
    std::string type_expr, name_expr, cb_expr;
    if (method == "create_publisher")
    {
        kind = PortKind::publisher;
        type_expr = args.get(0, "msg_type");
        name_expr = args.get(1, "topic");
    }
    else if (method == "create_subscription")
    {
        kind = PortKind::subscriber;
        type_expr = args.get(0, "msg_type");
        name_expr = args.get(1, "topic");
        cb_expr = args.get(2, "callback");
    }
    else if (method == "create_service")
    {
        kind = PortKind::service_server;
        type_expr = args.get(0, "srv_type");
        name_expr = args.get(1, "srv_name");
        cb_expr = args.get(2, "callback");
    }
    else  // create_client
    {
        kind = PortKind::service_client;
        type_expr = args.get(0, "srv_type");
        name_expr = args.get(1, "srv_name");
    }

    std::string interface = normalize_interface_type(type_expr);
    if (interface.empty())
    {
        auto it = imports.find(trim(type_expr));
        if (it != imports.end()) interface = it->second;
    }
    if (interface.empty())
    {
        sink.warning(where, "cannot resolve interface type expression '" + type_expr +
                                "'; port skipped");
        return;
    }

    CommunicationPort port;
    port.kind = kind;
    port.interface_type = interface;
    const NameResolution name = resolve_declared_name(name_expr, consts);
    port.declared_name = name.value;
    port.unresolved_name = name.unresolved;
    if (name.unresolved)
        sink.warning(where, "topic/service name is not a string literal: '" + name.value + "'");
    if (kind_takes_callback(kind))
    {
        std::string cb = resolve_callback(cb_expr, sink, where);
        if (cb.empty())
        {
            sink.warning(where, "missing callback for " + std::string(to_string(kind)));
            cb = "(unknown)";
        }
        port.callback_name = cb;
    }
    ports.push_back(std::move(port));
}

// Scans lines [begin, end) for create_* calls and the node-name super().__init__.
void scan_block(const std::vector<Line>& lines, size_t begin, size_t end,
                const std::map<std::string, std::string>& imports,
                const std::map<std::string, std::string>& consts, const std::string& where,
                std::optional<std::string>& node_name, std::vector<CommunicationPort>& ports,
                DiagnosticSink& sink)
{
    static const std::vector<std::string> methods = {
        "create_publisher", "create_subscription", "create_service", "create_client"};

    for (size_t i = begin; i < end; ++i)
    {
        const std::string& text = lines[i].text;

        if (!node_name)
        {
            for (const std::string& head :
                 {std::string("super().__init__"), std::string(".__init__")})
            {
                const size_t at = text.find(head + "(");
                if (at == std::string::npos) continue;
                const std::string call = balanced_call(lines, i, at + head.size());
                CallArgs args = interpret_args(split_args(call));
                // Node.__init__(self, 'name') carries self as arg 0
                if (!args.positional.empty() && trim(args.positional[0]) == "self")
                    args.positional.erase(args.positional.begin());
                const std::string expr = args.get(0, "node_name");
                const NameResolution r = resolve_declared_name(expr, consts);
                if (!expr.empty() && !r.unresolved) node_name = r.value;
                break;
            }
        }

        for (const std::string& m : methods)
        {
            size_t pos = 0;
            while ((pos = text.find(m + "(", pos)) != std::string::npos)
            {
                // require a method call: preceded by '.'
                if (pos == 0 || text[pos - 1] != '.')
                {
                    pos += m.size();
                    continue;
                }
                const std::string call = balanced_call(lines, i, text.find('(', pos));
                if (call.empty() || call.back() != ')')
                    sink.warning(where, "unbalanced call for " + m + "; skipped");
                else
                    parse_create_call(m, call, imports, consts, where, ports, sink);
                pos += m.size();
            }
        }
    }
}

size_t block_end(const std::vector<Line>& lines, size_t header_idx, int header_indent)
{
    size_t end = header_idx + 1;
    for (size_t i = header_idx + 1; i < lines.size(); ++i)
    {
        if (lines[i].indent < 0)
        {
            continue;  // blank line, block may continue
        }
        if (lines[i].indent <= header_indent) break;
        end = i + 1;
    }
    return end;
}

bool base_is_node(const std::string& bases)
{
    for (const std::string& b : split(bases, ','))
    {
        const auto parts = split(trim(b), '.');
        const std::string& last = parts.back();
        if (last == "Node" || last == "LifecycleNode") return true;
    }
    return false;
}

}  // namespace

std::vector<ScannedNodeClass> scan_python_source(const std::string& text,
                                                 const std::string& rel_path,
                                                 DiagnosticSink& sink)
{
    const std::vector<Line> lines = prepare(text);
    const auto imports = scan_imports(lines);
    const auto consts = scan_constants(lines);

    std::vector<ScannedNodeClass> out;
    for (size_t i = 0; i < lines.size(); ++i)
    {
        const std::string t = trim(lines[i].text);

        if (t.starts_with("class "))
        {
            const size_t open = t.find('(');
            const size_t close = t.rfind(')');
            if (open == std::string::npos || close == std::string::npos || close < open)
                continue;
            const std::string name = trim(t.substr(6, open - 6));
            if (!is_identifier(name) || !base_is_node(t.substr(open + 1, close - open - 1)))
                continue;

            ScannedNodeClass c;
            c.class_name = name;
            c.compile_type = CompileType::python;
            c.source_files = {rel_path};
            const size_t end = block_end(lines, i, lines[i].indent);
            scan_block(lines, i + 1, end, imports, consts, rel_path, c.node_name, c.ports,
                       sink);
            out.push_back(std::move(c));
        }
        else if (t.starts_with("def ") && lines[i].indent == 0)
        {
            // direct node construction in an entry function
            const size_t end = block_end(lines, i, 0);
            std::string var, node_name;
            for (size_t j = i + 1; j < end; ++j)
            {
                const std::string s = trim(lines[j].text);
                const size_t at = s.find("rclpy.create_node(");
                if (at == std::string::npos) continue;
                const std::string call =
                    balanced_call(lines, j, lines[j].text.find('(', lines[j].text.find(
                                                                       "rclpy.create_node")));
                const CallArgs args = interpret_args(split_args(call));
                const NameResolution r =
                    resolve_declared_name(args.get(0, "node_name"), consts);
                if (r.unresolved) continue;
                node_name = r.value;
                const size_t eq = s.find('=');
                if (eq != std::string::npos && eq < at) var = trim(s.substr(0, eq));
                break;
            }
            if (node_name.empty()) continue;

            const size_t paren = t.find('(');
            ScannedNodeClass c;
            c.class_name = trim(t.substr(4, paren - 4));
            c.node_name = node_name;
            c.compile_type = CompileType::python;
            c.source_files = {rel_path};
            c.direct_construction = true;
            if (!var.empty())
            {
                // only calls on the constructed node variable belong to this pseudo-class
                std::vector<Line> scoped;
                for (size_t j = i + 1; j < end; ++j)
                {
                    Line l = lines[j];
                    if (l.text.find(var + ".create_") == std::string::npos &&
                        l.text.find("create_") != std::string::npos)
                        l.text.clear();
                    scoped.push_back(std::move(l));
                }
                std::optional<std::string> ignored;
                scan_block(scoped, 0, scoped.size(), imports, consts, rel_path, ignored,
                           c.ports, sink);
            }
            out.push_back(std::move(c));
            i = end - 1;
        }
    }
    return out;
}

std::string normalize_interface_type(const std::string& expr)
{
    std::string e = trim(expr);
    if (e.starts_with("::")) e = e.substr(2);
    std::string flat;
    for (size_t i = 0; i < e.size(); ++i)
    {
        if (e[i] == ':' && i + 1 < e.size() && e[i + 1] == ':')
        {
            flat += '/';
            ++i;
        }
        else if (e[i] == '.')
            flat += '/';
        else if (!std::isspace(static_cast<unsigned char>(e[i])))
            flat += e[i];
    }
    return valid_interface_type(flat) ? flat : "";
}

std::vector<CommunicationPort> extract_ports(const std::vector<std::string>& class_sources,
                                             CompileType compile_type, DiagnosticSink& sink)
{
    std::vector<CommunicationPort> ports;
    if (compile_type == CompileType::python)
    {
        for (const std::string& text : class_sources)
            for (ScannedNodeClass& c : scan_python_source(text, "", sink))
                ports.insert(ports.end(), c.ports.begin(), c.ports.end());
        return ports;
    }
    std::vector<std::pair<std::string, std::string>> files;
    for (size_t i = 0; i < class_sources.size(); ++i)
        files.emplace_back("source_" + std::to_string(i), class_sources[i]);
    for (ScannedNodeClass& c : scan_cpp_sources(files, sink))
        ports.insert(ports.end(), c.ports.begin(), c.ports.end());
    return ports;
}

}  // namespace archrec::extract
