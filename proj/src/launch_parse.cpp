#include "archrec/launch_parse.hpp"

#include <algorithm>
#include <map>

#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/textutil.hpp"

namespace archrec::launch
{
namespace
{

// ---------------------------------------------------------------- shared bits

struct ActionCounter
{
    int next = 0;
};

// $(var x) substitution against declared argument defaults.
std::string substitute_vars(const std::string& value,
                            const std::map<std::string, std::string>& args,
                            const std::string& file, DiagnosticSink& sink)
{
    std::string out;
    size_t pos = 0;
    while (pos < value.size())
    {
        const size_t dollar = value.find("$(", pos);
        if (dollar == std::string::npos)
        {
            out += value.substr(pos);
            break;
        }
        out += value.substr(pos, dollar - pos);
        const size_t close = value.find(')', dollar);
        if (close == std::string::npos)
        {
            out += value.substr(dollar);
            break;
        }
        const std::string inner = value.substr(dollar + 2, close - dollar - 2);
        const auto words = split(trim(inner), ' ');
        if (words.size() == 2 && words[0] == "var" && args.count(words[1]))
        {
            out += args.at(words[1]);
        }
        else
        {
            sink.warning(file, "unresolved substitution $(" + inner + ")");
            out += value.substr(dollar, close - dollar + 1);
        }
        pos = close + 1;
    }
    return out;
}

// Decomposes an include target into share-package hint plus path segments.
void parse_include_target(const std::string& raw_value,
                          const std::map<std::string, std::string>& args, RawInclude& inc,
                          const std::string& file, DiagnosticSink& sink)
{
    std::string value = raw_value;
    const size_t share = value.find("$(find-pkg-share ");
    if (share != std::string::npos)
    {
        const size_t close = value.find(')', share);
        if (close != std::string::npos)
        {
            inc.share_package = trim(value.substr(share + 17, close - share - 17));
            value = value.substr(0, share) + value.substr(close + 1);
        }
    }
    const size_t dirname = value.find("$(dirname)");
    if (dirname != std::string::npos) value.erase(dirname, 10);
    value = substitute_vars(value, args, file, sink);
    for (const std::string& seg : split(value, '/'))
        if (!trim(seg).empty() && trim(seg).find("$(") == std::string::npos)
            inc.literal_segments.push_back(trim(seg));
}

// ---------------------------------------------------------------- script form

std::string strip_py_comments(const std::string& text)
{
    std::string out;
    out.reserve(text.size());
    char quote = 0;
    for (size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quote)
        {
            out += c;
            if (c == '\\' && i + 1 < text.size())
                out += text[++i];
            else if (c == quote)
                quote = 0;
        }
        else if (c == '#')
        {
            while (i < text.size() && text[i] != '\n') ++i;
            if (i < text.size()) out += '\n';
        }
        else
        {
            if (c == '\'' || c == '"') quote = c;
            out += c;
        }
    }
    return out;
}

size_t match_bracket(const std::string& text, size_t open)
{
    const char oc = text[open];
    const char cc = oc == '(' ? ')' : (oc == '[' ? ']' : '}');
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
        if (c == '\'' || c == '"')
            quote = c;
        else if (c == oc)
            ++depth;
        else if (c == cc)
        {
            --depth;
            if (depth == 0) return i;
        }
    }
    return std::string::npos;
}

std::vector<std::string> split_top_commas(const std::string& body)
{
    std::vector<std::string> out;
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
            case '\'':
            case '"':
                quote = c;
                cur += c;
                break;
            case '(':
            case '[':
            case '{':
                ++depth;
                cur += c;
                break;
            case ')':
            case ']':
            case '}':
                --depth;
                cur += c;
                break;
            case ',':
                if (depth == 0)
                {
                    if (!trim(cur).empty()) out.push_back(trim(cur));
                    cur.clear();
                }
                else
                    cur += c;
                break;
            default:
                cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

struct PyCall
{
    std::string callee;  // last identifier chain before '('
    std::vector<std::string> positional;
    std::map<std::string, std::string> keyword;
};

std::optional<PyCall> parse_py_call(const std::string& expr)
{
    const size_t open = expr.find('(');
    if (open == std::string::npos) return std::nullopt;
    const size_t close = match_bracket(expr, open);
    if (close == std::string::npos) return std::nullopt;
    PyCall call;
    const auto dotted = split(trim(expr.substr(0, open)), '.');
    call.callee = dotted.back();
    for (const std::string& a : split_top_commas(expr.substr(open + 1, close - open - 1)))
    {
        const size_t eq = a.find('=');
        if (eq != std::string::npos && eq + 1 < a.size() && a[eq + 1] != '=' &&
            is_identifier(trim(a.substr(0, eq))))
            call.keyword[trim(a.substr(0, eq))] = trim(a.substr(eq + 1));
        else
            call.positional.push_back(a);
    }
    return call;
}

// Literal, LaunchConfiguration('x') default, or TextSubstitution(text='x').
std::optional<std::string> py_string_value(const std::string& expr,
                                           const std::map<std::string, std::string>& args)
{
    std::string lit;
    if (unquote(trim(expr), lit)) return lit;
    const auto call = parse_py_call(expr);
    if (call)
    {
        if (call->callee == "LaunchConfiguration" && !call->positional.empty())
        {
            std::string name;
            if (unquote(call->positional[0], name) && args.count(name)) return args.at(name);
        }
        if (call->callee == "TextSubstitution")
        {
            auto it = call->keyword.find("text");
            if (it != call->keyword.end() && unquote(it->second, lit)) return lit;
        }
    }
    return std::nullopt;
}

// Collects quoted literals in order, skipping the share-directory call argument.
void scan_py_include_source(const std::string& expr, RawInclude& inc)
{
    std::string masked = expr;
    for (const std::string& fn :
         {std::string("get_package_share_directory"), std::string("FindPackageShare")})
    {
        const size_t at = masked.find(fn);
        if (at == std::string::npos) continue;
        const size_t open = masked.find('(', at);
        if (open == std::string::npos) continue;
        const size_t close = match_bracket(masked, open);
        if (close == std::string::npos) continue;
        std::string pkg;
        if (unquote(trim(masked.substr(open + 1, close - open - 1)), pkg))
            inc.share_package = pkg;
        masked = masked.substr(0, at) + masked.substr(close + 1);
        break;
    }
    char quote = 0;
    std::string cur;
    for (size_t i = 0; i < masked.size(); ++i)
    {
        const char c = masked[i];
        if (quote)
        {
            if (c == quote)
            {
                for (const std::string& seg : split(cur, '/'))
                    if (!trim(seg).empty()) inc.literal_segments.push_back(trim(seg));
                cur.clear();
                quote = 0;
            }
            else
                cur += c;
        }
        else if (c == '\'' || c == '"')
            quote = c;
    }
}

class ScriptParser
{
public:
    ScriptParser(const std::string& text, const std::string& file, DiagnosticSink& sink)
        : text_(strip_py_comments(text)), file_(file), sink_(sink)
    {
    }

    void run(ParsedLaunchFile& out)
    {
        collect_arguments();

        const size_t ld = find_call("LaunchDescription");
        bool parsed_list = false;
        if (ld != std::string::npos)
        {
            const size_t open = text_.find('(', ld);
            const size_t close = match_bracket(text_, open);
            if (close != std::string::npos)
            {
                const std::string body = text_.substr(open + 1, close - open - 1);
                const size_t lb = body.find('[');
                if (lb != std::string::npos)
                {
                    const size_t rb = match_bracket(body, lb);
                    if (rb != std::string::npos)
                    {
                        parse_action_list(body.substr(lb + 1, rb - lb - 1), {}, out);
                        parsed_list = true;
                    }
                }
            }
        }

        // ld.add_action(...) style, in statement order
        size_t pos = 0;
        while ((pos = text_.find(".add_action", pos)) != std::string::npos)
        {
            const size_t open = text_.find('(', pos);
            pos += 11;
            if (open == std::string::npos) break;
            const size_t close = match_bracket(text_, open);
            if (close == std::string::npos) break;
            parse_action(trim(text_.substr(open + 1, close - open - 1)), {}, out);
            pos = close;
            parsed_list = true;
        }

        if (!parsed_list)
            sink_.warning(file_, "no launch description construction found");
    }

private:
    size_t find_call(const std::string& name)
    {
        size_t pos = 0;
        while ((pos = text_.find(name, pos)) != std::string::npos)
        {
            const size_t at = pos;
            pos += name.size();
            const bool starts_clean =
                at == 0 || !(std::isalnum(static_cast<unsigned char>(text_[at - 1])) ||
                             text_[at - 1] == '_');
            size_t next = at + name.size();
            while (next < text_.size() && std::isspace(static_cast<unsigned char>(text_[next])))
                ++next;
            if (starts_clean && next < text_.size() && text_[next] == '(') return at;
        }
        return std::string::npos;
    }

    void collect_arguments()
    {
        size_t pos = 0;
        while ((pos = text_.find("DeclareLaunchArgument", pos)) != std::string::npos)
        {
            const size_t open = text_.find('(', pos);
            pos += 10;
            if (open == std::string::npos) break;
            const size_t close = match_bracket(text_, open);
            if (close == std::string::npos) break;
            const auto call =
                parse_py_call("DeclareLaunchArgument" + text_.substr(open, close - open + 1));
            if (!call) continue;
            std::string name;
            if (call->positional.empty() || !unquote(call->positional[0], name))
            {
                auto it = call->keyword.find("name");
                if (it == call->keyword.end() || !unquote(it->second, name)) continue;
            }
            std::string def;
            auto it = call->keyword.find("default_value");
            if (it != call->keyword.end() && unquote(it->second, def))
                args_[name] = def;
            else
                sink_.warning(file_, "launch argument '" + name + "' has no literal default");
            pos = close;
        }
    }

    void parse_action_list(const std::string& body, std::vector<std::string> group_ns,
                           ParsedLaunchFile& out)
    {
        for (const std::string& item : split_top_commas(body))
            parse_action(item, group_ns, out);
    }

    void parse_action(const std::string& expr, std::vector<std::string> group_ns,
                      ParsedLaunchFile& out)
    {
        const auto call = parse_py_call(expr);
        if (!call)
        {
            sink_.warning(file_, "unresolved launch element: " + expr.substr(0, 60));
            return;
        }
        const std::string& kind = call->callee;

        if (kind == "Node" || kind == "LifecycleNode")
        {
            parse_node(*call, group_ns, out);
        }
        else if (kind == "IncludeLaunchDescription")
        {
            RawInclude inc;
            inc.order = counter_.next++;
            inc.group_namespaces = group_ns;
            inc.source_text = trim(expr.substr(0, 120));
            if (!call->positional.empty())
            {
                scan_py_include_source(call->positional[0], inc);
            }
            else if (call->keyword.count("launch_description_source"))
            {
                scan_py_include_source(call->keyword.at("launch_description_source"), inc);
            }
            if (call->keyword.count("condition"))
            {
                inc.conditional = true;
                sink_.warning(file_, "conditional include kept: " + inc.source_text);
            }
            out.includes.push_back(std::move(inc));
        }
        else if (kind == "GroupAction")
        {
            std::string list_body;
            if (!call->positional.empty())
            {
                const std::string& first = call->positional[0];
                const size_t lb = first.find('[');
                if (lb != std::string::npos)
                {
                    const size_t rb = match_bracket(first, lb);
                    if (rb != std::string::npos) list_body = first.substr(lb + 1, rb - lb - 1);
                }
            }
            if (list_body.empty() && call->keyword.count("actions"))
            {
                const std::string& a = call->keyword.at("actions");
                const size_t lb = a.find('[');
                const size_t rb = lb == std::string::npos ? std::string::npos
                                                          : match_bracket(a, lb);
                if (rb != std::string::npos) list_body = a.substr(lb + 1, rb - lb - 1);
            }
            if (list_body.empty())
            {
                sink_.warning(file_, "group action without a parseable action list");
                return;
            }
            if (call->keyword.count("condition"))
                sink_.warning(file_, "conditional group kept");
            // pushes apply to the actions that follow them inside the group
            std::vector<std::string> inner_ns = group_ns;
            for (const std::string& item : split_top_commas(list_body))
            {
                const auto inner = parse_py_call(item);
                if (inner && inner->callee == "PushRosNamespace")
                {
                    std::string ns;
                    std::string expr2 = inner->positional.empty()
                                            ? (inner->keyword.count("namespace")
                                                   ? inner->keyword.at("namespace")
                                                   : "")
                                            : inner->positional[0];
                    const auto val = py_string_value(expr2, args_);
                    if (val)
                        inner_ns.push_back(*val);
                    else
                        sink_.warning(file_, "namespace push with non-literal value");
                    continue;
                }
                parse_action(item, inner_ns, out);
            }
        }
        else if (kind == "PushRosNamespace" || kind == "DeclareLaunchArgument")
        {
            // pushes outside groups and argument declarations carry no actions
        }
        else
        {
            sink_.warning(file_, "unresolved launch element '" + kind + "'");
        }
    }

    void parse_node(const PyCall& call, std::vector<std::string> group_ns,
                    ParsedLaunchFile& out)
    {
        RawNodeDecl n;
        n.order = counter_.next++;
        n.group_namespaces = std::move(group_ns);
        auto kw = [&](const char* key) -> std::optional<std::string>
        {
            auto it = call.keyword.find(key);
            if (it == call.keyword.end()) return std::nullopt;
            return py_string_value(it->second, args_);
        };
        if (auto v = kw("package")) n.package = *v;
        if (auto v = kw("executable"))
            n.executable = *v;
        else if (auto p = kw("plugin"))
            n.executable = *p;
        if (auto v = kw("name"))
            n.name = *v;
        else if (call.keyword.count("name"))
            sink_.warning(file_, "node name is not statically resolvable");
        if (auto v = kw("namespace")) n.ns_attribute = *v;
        if (call.keyword.count("condition"))
        {
            n.conditional = true;
            sink_.warning(file_, "conditional node kept: " + n.executable);
        }
        if (call.keyword.count("remappings"))
        {
            const std::string& r = call.keyword.at("remappings");
            const size_t lb = r.find('[');
            const size_t rb = lb == std::string::npos ? std::string::npos : match_bracket(r, lb);
            if (rb != std::string::npos)
            {
                for (const std::string& pair : split_top_commas(r.substr(lb + 1, rb - lb - 1)))
                {
                    const size_t po = pair.find('(');
                    const size_t pc = po == std::string::npos ? std::string::npos
                                                              : match_bracket(pair, po);
                    if (pc == std::string::npos) continue;
                    const auto halves = split_top_commas(pair.substr(po + 1, pc - po - 1));
                    std::string from, to;
                    if (halves.size() == 2 && unquote(halves[0], from) && unquote(halves[1], to))
                        n.remappings.push_back({from, to});
                    else
                        sink_.warning(file_, "remapping pair is not a literal tuple: " + pair);
                }
            }
        }
        if (n.executable.empty())
            sink_.warning(file_, "node action without resolvable executable");
        out.nodes.push_back(std::move(n));
    }

    std::string text_;
    std::string file_;
    DiagnosticSink& sink_;
    std::map<std::string, std::string> args_;
    ActionCounter counter_;
};

// ------------------------------------------------------------------- xml form

struct XmlElement
{
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlElement> children;

    std::optional<std::string> attr(const std::string& key) const
    {
        for (const auto& [k, v] : attrs)
            if (k == key) return v;
        return std::nullopt;
    }
};

class XmlReader
{
public:
    XmlReader(const std::string& text, const std::string& file, DiagnosticSink& sink)
        : text_(text), file_(file), sink_(sink)
    {
    }

    std::optional<XmlElement> read_root()
    {
        XmlElement root;
        std::vector<XmlElement*> stack;
        bool have_root = false;
        size_t pos = 0;
        while (pos < text_.size())
        {
            const size_t lt = text_.find('<', pos);
            if (lt == std::string::npos) break;
            if (text_.compare(lt, 4, "<!--") == 0)
            {
                const size_t end = text_.find("-->", lt);
                pos = end == std::string::npos ? text_.size() : end + 3;
                continue;
            }
            if (text_.compare(lt, 2, "<?") == 0)
            {
                const size_t end = text_.find("?>", lt);
                pos = end == std::string::npos ? text_.size() : end + 2;
                continue;
            }
            const size_t gt = text_.find('>', lt);
            if (gt == std::string::npos)
            {
                sink_.warning(file_, "unterminated tag");
                break;
            }
            std::string tag = text_.substr(lt + 1, gt - lt - 1);
            pos = gt + 1;
            if (tag.empty()) continue;
            if (tag.front() == '/')
            {
                if (stack.empty())
                {
                    sink_.warning(file_, "unbalanced closing tag </" + trim(tag.substr(1)) + ">");
                    continue;
                }
                stack.pop_back();
                continue;
            }
            bool self_closing = false;
            if (tag.back() == '/')
            {
                self_closing = true;
                tag.pop_back();
            }
            XmlElement el = parse_tag(tag);
            if (!have_root)
            {
                root = std::move(el);
                have_root = true;
                if (!self_closing) stack.push_back(&root);
                continue;
            }
            if (stack.empty())
            {
                sink_.warning(file_, "multiple top-level elements; extra <" + el.name +
                                         "> ignored");
                continue;
            }
            stack.back()->children.push_back(std::move(el));
            if (!self_closing) stack.push_back(&stack.back()->children.back());
        }
        if (!have_root) return std::nullopt;
        return root;
    }

private:
    XmlElement parse_tag(const std::string& tag)
    {
        XmlElement el;
        size_t i = 0;
        while (i < tag.size() && !std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
        el.name = tag.substr(0, i);
        while (i < tag.size())
        {
            while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
            size_t eq = tag.find('=', i);
            if (eq == std::string::npos) break;
            const std::string key = trim(tag.substr(i, eq - i));
            size_t q = eq + 1;
            while (q < tag.size() && std::isspace(static_cast<unsigned char>(tag[q]))) ++q;
            if (q >= tag.size() || (tag[q] != '"' && tag[q] != '\'')) break;
            const char quote = tag[q];
            const size_t end = tag.find(quote, q + 1);
            if (end == std::string::npos) break;
            el.attrs.emplace_back(key, tag.substr(q + 1, end - q - 1));
            i = end + 1;
        }
        return el;
    }

    const std::string& text_;
    std::string file_;
    DiagnosticSink& sink_;
};

class XmlLaunchParser
{
public:
    XmlLaunchParser(const std::string& file, DiagnosticSink& sink) : file_(file), sink_(sink) {}

    void run(const XmlElement& root, ParsedLaunchFile& out)
    {
        if (root.name != "launch")
        {
            sink_.warning(file_, "root element is <" + root.name + ">, expected <launch>");
            return;
        }
        walk(root.children, {}, out);
    }

private:
    void walk(const std::vector<XmlElement>& elements, std::vector<std::string> group_ns,
              ParsedLaunchFile& out)
    {
        std::vector<std::string> ns = group_ns;
        for (const XmlElement& el : elements)
        {
            if (el.name == "arg")
            {
                const auto name = el.attr("name");
                const auto def = el.attr("default");
                if (name && def) args_[*name] = *def;
                continue;
            }
            if (el.name == "push_ros_namespace" || el.name == "push-ros-namespace")
            {
                if (const auto v = el.attr("namespace"))
                    ns.push_back(substitute_vars(*v, args_, file_, sink_));
                continue;
            }
            if (el.name == "group")
            {
                walk(el.children, ns, out);
                continue;
            }
            if (el.name == "node")
            {
                RawNodeDecl n;
                n.order = counter_.next++;
                n.group_namespaces = ns;
                if (const auto v = el.attr("pkg")) n.package = sub(*v);
                if (const auto v = el.attr("exec")) n.executable = sub(*v);
                if (const auto v = el.attr("name")) n.name = sub(*v);
                if (const auto v = el.attr("namespace"))
                    n.ns_attribute = sub(*v);
                else if (const auto w = el.attr("ns"))
                    n.ns_attribute = sub(*w);
                if (el.attr("if") || el.attr("unless"))
                {
                    n.conditional = true;
                    sink_.warning(file_, "conditional node kept: " + n.executable);
                }
                for (const XmlElement& child : el.children)
                {
                    if (child.name != "remap") continue;
                    const auto from = child.attr("from");
                    const auto to = child.attr("to");
                    if (from && to) n.remappings.push_back({sub(*from), sub(*to)});
                }
                if (n.executable.empty())
                    sink_.warning(file_, "node element without exec attribute");
                out.nodes.push_back(std::move(n));
                continue;
            }
            if (el.name == "include")
            {
                RawInclude inc;
                inc.order = counter_.next++;
                inc.group_namespaces = ns;
                if (const auto v = el.attr("file"))
                {
                    inc.source_text = *v;
                    parse_include_target(*v, args_, inc, file_, sink_);
                }
                if (el.attr("if") || el.attr("unless"))
                {
                    inc.conditional = true;
                    sink_.warning(file_, "conditional include kept: " + inc.source_text);
                }
                out.includes.push_back(std::move(inc));
                continue;
            }
            sink_.warning(file_, "unresolved launch element <" + el.name + ">");
        }
    }

    std::string sub(const std::string& v) { return substitute_vars(v, args_, file_, sink_); }

    std::string file_;
    DiagnosticSink& sink_;
    std::map<std::string, std::string> args_;
    ActionCounter counter_;
};

// ------------------------------------------------------------------ yaml form

struct YamlNode
{
    enum class Type
    {
        scalar,
        map,
        seq,
    };
    Type type = Type::scalar;
    std::string scalar;
    std::vector<std::pair<std::string, YamlNode>> map;
    std::vector<YamlNode> seq;

    const YamlNode* get(const std::string& key) const
    {
        for (const auto& [k, v] : map)
            if (k == key) return &v;
        return nullptr;
    }
};

struct YamlLine
{
    int indent = 0;
    std::string content;
};

class YamlReader
{
public:
    explicit YamlReader(const std::string& text)
    {
        for (const std::string& raw : split(text, '\n'))
        {
            std::string line = raw;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const size_t hash = find_comment(line);
            if (hash != std::string::npos) line = line.substr(0, hash);
            if (trim(line).empty()) continue;
            YamlLine l;
            l.indent = 0;
            while (l.indent < static_cast<int>(line.size()) && line[l.indent] == ' ')
                ++l.indent;
            l.content = trim(line);
            lines_.push_back(std::move(l));
        }
    }

    YamlNode parse()
    {
        size_t idx = 0;
        return parse_block(idx, 0);
    }

private:
    static size_t find_comment(const std::string& line)
    {
        char quote = 0;
        for (size_t i = 0; i < line.size(); ++i)
        {
            const char c = line[i];
            if (quote)
            {
                if (c == quote) quote = 0;
            }
            else if (c == '\'' || c == '"')
                quote = c;
            else if (c == '#' && (i == 0 || line[i - 1] == ' '))
                return i;
        }
        return std::string::npos;
    }

    static std::string unquote_scalar(const std::string& s)
    {
        std::string out;
        if (unquote(trim(s), out)) return out;
        return trim(s);
    }

    YamlNode parse_block(size_t& idx, int min_indent)
    {
        YamlNode node;
        if (idx >= lines_.size()) return node;
        const int indent = lines_[idx].indent;
        if (indent < min_indent) return node;

        if (lines_[idx].content.front() == '-')
        {
            node.type = YamlNode::Type::seq;
            while (idx < lines_.size() && lines_[idx].indent == indent &&
                   lines_[idx].content.front() == '-')
            {
                std::string rest = trim(lines_[idx].content.substr(1));
                if (rest.empty())
                {
                    ++idx;
                    node.seq.push_back(parse_block(idx, indent + 1));
                }
                else
                {
                    // inline first key of a nested node: "- key: ..." or "- scalar"
                    lines_[idx].indent = indent + 2;
                    lines_[idx].content = rest;
                    node.seq.push_back(parse_block(idx, indent + 1));
                }
            }
            return node;
        }

        const size_t colon = find_colon(lines_[idx].content);
        if (colon == std::string::npos)
        {
            node.type = YamlNode::Type::scalar;
            node.scalar = unquote_scalar(lines_[idx].content);
            ++idx;
            return node;
        }

        node.type = YamlNode::Type::map;
        while (idx < lines_.size() && lines_[idx].indent == indent)
        {
            const std::string& content = lines_[idx].content;
            if (content.front() == '-') break;
            const size_t c = find_colon(content);
            if (c == std::string::npos) break;
            const std::string key = unquote_scalar(content.substr(0, c));
            const std::string value = trim(content.substr(c + 1));
            ++idx;
            if (!value.empty())
            {
                YamlNode leaf;
                leaf.type = YamlNode::Type::scalar;
                leaf.scalar = unquote_scalar(value);
                node.map.emplace_back(key, std::move(leaf));
            }
            else if (idx < lines_.size() && lines_[idx].indent > indent)
            {
                node.map.emplace_back(key, parse_block(idx, indent + 1));
            }
            else if (idx < lines_.size() && lines_[idx].indent == indent &&
                     lines_[idx].content.front() == '-')
            {
                // sequence at same indent as its key (common yaml style)
                node.map.emplace_back(key, parse_block(idx, indent));
            }
            else
            {
                node.map.emplace_back(key, YamlNode{});
            }
        }
        return node;
    }

    static size_t find_colon(const std::string& s)
    {
        char quote = 0;
        for (size_t i = 0; i < s.size(); ++i)
        {
            const char c = s[i];
            if (quote)
            {
                if (c == quote) quote = 0;
            }
            else if (c == '\'' || c == '"')
                quote = c;
            else if (c == ':' && (i + 1 == s.size() || s[i + 1] == ' '))
                return i;
        }
        return std::string::npos;
    }

    std::vector<YamlLine> lines_;
};

class YamlLaunchParser
{
public:
    YamlLaunchParser(const std::string& file, DiagnosticSink& sink) : file_(file), sink_(sink) {}

    void run(const YamlNode& root, ParsedLaunchFile& out)
    {
        const YamlNode* launch = root.get("launch");
        if (!launch || launch->type != YamlNode::Type::seq)
        {
            sink_.warning(file_, "no top-level 'launch' sequence");
            return;
        }
        walk(*launch, {}, out);
    }

private:
    void walk(const YamlNode& seq, std::vector<std::string> group_ns, ParsedLaunchFile& out)
    {
        std::vector<std::string> ns = group_ns;
        for (const YamlNode& item : seq.seq)
        {
            if (item.type != YamlNode::Type::map || item.map.empty())
            {
                sink_.warning(file_, "unresolved launch element (not a mapping)");
                continue;
            }
            const auto& [kind, body] = item.map.front();
            if (kind == "arg")
            {
                const YamlNode* name = body.get("name");
                const YamlNode* def = body.get("default");
                if (name && def) args_[name->scalar] = def->scalar;
            }
            else if (kind == "push_ros_namespace" || kind == "push-ros-namespace")
            {
                if (const YamlNode* v = body.get("namespace"))
                    ns.push_back(substitute_vars(v->scalar, args_, file_, sink_));
            }
            else if (kind == "group")
            {
                walk(body, ns, out);
            }
            else if (kind == "node")
            {
                RawNodeDecl n;
                n.order = counter_.next++;
                n.group_namespaces = ns;
                auto value = [&](const char* a, const char* b) -> std::optional<std::string>
                {
                    const YamlNode* v = body.get(a);
                    if (!v && b) v = body.get(b);
                    if (!v || v->type != YamlNode::Type::scalar) return std::nullopt;
                    return substitute_vars(v->scalar, args_, file_, sink_);
                };
                if (auto v = value("pkg", "package")) n.package = *v;
                if (auto v = value("exec", "executable")) n.executable = *v;
                if (auto v = value("name", nullptr)) n.name = *v;
                if (auto v = value("namespace", "ns")) n.ns_attribute = *v;
                if (body.get("if") || body.get("unless"))
                {
                    n.conditional = true;
                    sink_.warning(file_, "conditional node kept: " + n.executable);
                }
                if (const YamlNode* remaps = body.get("remap"))
                {
                    for (const YamlNode& r : remaps->seq)
                    {
                        const YamlNode* from = r.get("from");
                        const YamlNode* to = r.get("to");
                        if (from && to)
                            n.remappings.push_back({from->scalar, to->scalar});
                        else
                            sink_.warning(file_, "remap entry missing from/to");
                    }
                }
                if (n.executable.empty())
                    sink_.warning(file_, "node entry without exec");
                out.nodes.push_back(std::move(n));
            }
            else if (kind == "include")
            {
                RawInclude inc;
                inc.order = counter_.next++;
                inc.group_namespaces = ns;
                if (const YamlNode* f = body.get("file"))
                {
                    inc.source_text = f->scalar;
                    parse_include_target(f->scalar, args_, inc, file_, sink_);
                }
                if (body.get("if") || body.get("unless"))
                {
                    inc.conditional = true;
                    sink_.warning(file_, "conditional include kept: " + inc.source_text);
                }
                out.includes.push_back(std::move(inc));
            }
            else
            {
                sink_.warning(file_, "unresolved launch element '" + kind + "'");
            }
        }
    }

    std::string file_;
    DiagnosticSink& sink_;
    std::map<std::string, std::string> args_;
    ActionCounter counter_;
};

}  // namespace

LaunchFormat infer_format(const fs::path& path)
{
    const std::string ext = path.extension().generic_string();
    if (ext == ".py") return LaunchFormat::script;
    if (ext == ".xml") return LaunchFormat::xml;
    if (ext == ".yaml" || ext == ".yml") return LaunchFormat::yaml;
    throw InputError("cannot infer launch format from extension: " + path.generic_string());
}

ParsedLaunchFile parse_launch_file(const fs::path& path, std::optional<LaunchFormat> format,
                                   DiagnosticSink& sink)
{
    if (!fs::exists(path)) throw InputError("launch file not found: " + path.generic_string());
    ParsedLaunchFile out;
    out.path = path;
    out.format = format ? *format : infer_format(path);
    const std::string text = read_file(path);
    const std::string file = path.filename().generic_string();

    switch (out.format)
    {
        case LaunchFormat::script:
        {
            ScriptParser parser(text, file, sink);
            parser.run(out);
            break;
        }
        case LaunchFormat::xml:
        {
            XmlReader reader(text, file, sink);
            const auto root = reader.read_root();
            if (!root)
            {
                sink.warning(file, "no XML root element found");
                break;
            }
            XmlLaunchParser parser(file, sink);
            parser.run(*root, out);
            break;
        }
        case LaunchFormat::yaml:
        {
            YamlReader reader(text);
            YamlLaunchParser parser(file, sink);
            parser.run(reader.parse(), out);
            break;
        }
    }
    return out;
}

}  // namespace archrec::launch
