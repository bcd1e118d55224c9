#include "archrec/plantuml_parse.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "archrec/errors.hpp"
#include "archrec/fsutil.hpp"
#include "archrec/name_resolution.hpp"
#include "archrec/textutil.hpp"

namespace archrec::eval
{
namespace
{

constexpr char kSep = '|';

std::string key_join(std::initializer_list<std::string> parts)
{
    std::string out;
    bool first = true;
    for (const std::string& p : parts)
    {
        if (!first) out += kSep;
        out += p;
        first = false;
    }
    return out;
}

std::string qualify(const std::string& ns, const std::string& name)
{
    return ns == "/" ? "/" + name : ns + "/" + name;
}

enum class BlockType
{
    atomic,
    composed,
    part,
    unknown,
};

struct Block
{
    BlockType type = BlockType::unknown;
    std::string name;
    std::string stereotype;
    std::string alias;
    int open_line = 0;
    // part state
    std::string classifier;
    std::string ns = "/";
    std::vector<std::pair<std::string, std::string>> remaps;
};

struct Connector
{
    std::vector<std::string> producers;  // aliases
    std::vector<std::string> consumers;  // aliases
    std::string kind;
    std::string resolved;
    std::string type;
    int line = 0;
};

// Reads a leading double-quoted literal from s, returns rest after it.
bool take_quoted(std::string_view s, std::string& value, std::string_view& rest)
{
    s = trim_view(s);
    if (s.empty() || s.front() != '"') return false;
    const size_t end = s.find('"', 1);
    if (end == std::string_view::npos) return false;
    value = std::string(s.substr(1, end - 1));
    rest = s.substr(end + 1);
    return true;
}

bool take_stereotype(std::string_view s, std::string& value, std::string_view& rest)
{
    s = trim_view(s);
    if (s.substr(0, 2) != "<<") return false;
    const size_t end = s.find(">>");
    if (end == std::string_view::npos) return false;
    value = trim(s.substr(2, end - 2));
    rest = s.substr(end + 2);
    return true;
}

class Parser
{
public:
    Parser(const std::string& text, DiagnosticSink& sink) : sink_(sink)
    {
        std::string line;
        for (char c : text)
        {
            if (c == '\n')
            {
                lines_.push_back(line);
                line.clear();
            }
            else if (c != '\r')
                line += c;
        }
        if (!line.empty()) lines_.push_back(line);
    }

    ElementSets run()
    {
        bool started = false;
        bool ended = false;
        for (size_t i = 0; i < lines_.size(); ++i)
        {
            const int line_no = static_cast<int>(i) + 1;
            const std::string line = trim(lines_[i]);
            if (line.empty() || line.front() == '\'') continue;
            if (line == "@startuml")
            {
                if (started)
                    sink_.warning("", "line " + std::to_string(line_no) +
                                          ": repeated @startuml ignored");
                started = true;
                continue;
            }
            if (line == "@enduml")
            {
                if (!stack_.empty())
                    throw AnalysisError("line " + std::to_string(line_no) +
                                        ": @enduml with unclosed component block (opened at line " +
                                        std::to_string(stack_.back().open_line) + ")");
                ended = true;
                continue;
            }
            if (!started)
                throw AnalysisError("line " + std::to_string(line_no) +
                                    ": content before @startuml");
            if (ended)
            {
                sink_.warning("", "line " + std::to_string(line_no) +
                                      ": content after @enduml ignored");
                continue;
            }
            parse_line(line, line_no);
        }
        if (!started) throw AnalysisError("missing @startuml");
        if (!stack_.empty())
            throw AnalysisError("unclosed component block at end of input (opened at line " +
                                std::to_string(stack_.back().open_line) + ")");
        if (!ended) throw AnalysisError("missing @enduml");

        resolve_connectors();
        sets_.sort_all();
        return std::move(sets_);
    }

private:
    void parse_line(const std::string& line, int line_no)
    {
        if (line == "}")
        {
            if (stack_.empty())
                throw AnalysisError("line " + std::to_string(line_no) +
                                    ": '}' without an open block");
            close_block(stack_.back());
            stack_.pop_back();
            return;
        }
        if (line.starts_with("component ") || line.starts_with("component\""))
        {
            parse_component(line, line_no);
            return;
        }
        if (line.find("-->") != std::string::npos)
        {
            parse_connector(line, line_no);
            return;
        }
        if (!stack_.empty() && parse_annotation(line, line_no)) return;

        sink_.warning("", "line " + std::to_string(line_no) + ": unrecognized: " + line);
    }

    void parse_component(const std::string& line, int line_no)
    {
        std::string_view rest = std::string_view(line).substr(std::string("component").size());
        Block b;
        b.open_line = line_no;
        std::string_view after;
        if (!take_quoted(rest, b.name, after))
        {
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": component without quoted name: " + line);
            return;
        }
        if (!take_stereotype(after, b.stereotype, after))
        {
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": component without stereotype: " + line);
            b.stereotype = "";
        }
        std::string tail = trim(after);
        bool has_body = false;
        if (tail.ends_with("{"))
        {
            has_body = true;
            tail = trim(tail.substr(0, tail.size() - 1));
        }
        if (tail.starts_with("as "))
            b.alias = trim(tail.substr(3));
        else if (!tail.empty())
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": unexpected component suffix: " + tail);

        if (b.stereotype == "AtomicRosNodeClassifier" || b.stereotype == "UnresolvedClassifier")
            b.type = BlockType::atomic;
        else if (b.stereotype == "ComposedRosNodeClassifier")
            b.type = BlockType::composed;
        else if (b.stereotype == "RosNodePart")
            b.type = BlockType::part;
        else
        {
            b.type = BlockType::unknown;
            sink_.warning("", "line " + std::to_string(line_no) + ": unknown stereotype <<" +
                                  b.stereotype + ">>");
        }

        open_elements(b);
        if (has_body)
            stack_.push_back(b);
        else
            close_block(b);
    }

    void open_elements(const Block& b)
    {
        if (b.type == BlockType::atomic)
        {
            sets_.add(ElementKind::arc_name, b.name);
            sets_.add(ElementKind::arc_stereotype, key_join({b.name, b.stereotype}));
        }
        else if (b.type == BlockType::composed)
        {
            sets_.add(ElementKind::composed_classifier_name, b.name);
        }
        // part elements are emitted at close, once namespace/classifier are known
    }

    void close_block(const Block& b)
    {
        if (b.type != BlockType::part) return;  // only parts are connector endpoints
        sets_.add(ElementKind::node_part_name, b.name);
        sets_.add(ElementKind::node_part_namespace, key_join({b.ns, b.name}));
        if (!b.classifier.empty())
            sets_.add(ElementKind::node_part_classifier_ref,
                      key_join({b.ns, b.name, b.classifier}));
        for (const auto& [from, to] : b.remaps)
            sets_.add(ElementKind::remapping, key_join({b.ns, b.name, from, to}));
        if (!b.alias.empty()) alias_qualified_[b.alias] = qualify(b.ns, b.name);
    }

    bool parse_annotation(const std::string& line, int line_no)
    {
        Block& top = stack_.back();
        std::string_view rest;
        std::string value;

        if (line.starts_with("port "))
        {
            if (top.type != BlockType::atomic) return false;
            return parse_port(line, line_no, top);
        }
        if (line.starts_with("classifier "))
        {
            if (top.type != BlockType::part) return false;
            if (!take_quoted(std::string_view(line).substr(11), value, rest)) return false;
            top.classifier = value;
            return true;
        }
        if (line.starts_with("namespace "))
        {
            if (top.type != BlockType::part) return false;
            if (!take_quoted(std::string_view(line).substr(10), value, rest)) return false;
            try
            {
                top.ns = names::normalize_namespace(value);
            }
            catch (const AnalysisError& e)
            {
                sink_.warning("", "line " + std::to_string(line_no) + ": " + e.what());
                top.ns = value;
            }
            return true;
        }
        if (line.starts_with("remap "))
        {
            if (top.type != BlockType::part) return false;
            std::string from, to;
            std::string_view r;
            if (!take_quoted(std::string_view(line).substr(6), from, r)) return false;
            r = trim_view(r);
            if (!r.starts_with("->")) return false;
            if (!take_quoted(r.substr(2), to, r)) return false;
            top.remaps.emplace_back(from, to);
            return true;
        }
        // informational annotations carried by the dialect but not scored
        if (line.starts_with("node_name ") || line.starts_with("execution ") ||
            line.starts_with("executable ") || line.starts_with("description "))
        {
            const size_t sp = line.find(' ');
            return take_quoted(std::string_view(line).substr(sp), value, rest);
        }
        return false;
    }

    bool parse_port(const std::string& line, int line_no, Block& owner)
    {
        // port <kind> "<declared>" : <type> [-> <handler>]
        std::string_view rest = std::string_view(line).substr(5);
        rest = trim_view(rest);
        const size_t sp = rest.find(' ');
        if (sp == std::string_view::npos) return false;
        const std::string kind = std::string(rest.substr(0, sp));
        if (kind != "publisher" && kind != "subscriber" && kind != "service_server" &&
            kind != "service_client")
        {
            sink_.warning("", "line " + std::to_string(line_no) + ": unknown port kind: " + kind);
            return true;
        }
        std::string declared;
        std::string_view after;
        if (!take_quoted(rest.substr(sp), declared, after)) return false;
        after = trim_view(after);
        if (after.empty() || after.front() != ':') return false;
        std::string tail = trim(after.substr(1));
        std::string type = tail;
        std::string handler;
        const size_t arrow = tail.find("->");
        if (arrow != std::string::npos)
        {
            type = trim(tail.substr(0, arrow));
            handler = trim(tail.substr(arrow + 2));
        }

        const bool is_service = kind == "service_server" || kind == "service_client";
        const ElementKind type_kind =
            is_service ? ElementKind::service_type : ElementKind::message_type;
        sets_.add(type_kind, key_join({owner.name, kind, declared, type}));
        if (kind == "subscriber" && !handler.empty())
            sets_.add(ElementKind::callback_function_name, key_join({owner.name, handler}));
        if (kind == "service_server" && !handler.empty())
            sets_.add(ElementKind::service_function_name, key_join({owner.name, handler}));
        return true;
    }

    void parse_connector(const std::string& line, int line_no)
    {
        // <aliases> --> <aliases> : <kind> "<name>" : <type>
        const size_t arrow = line.find("-->");
        const std::string lhs = trim(line.substr(0, arrow));
        const std::string rhs_all = trim(line.substr(arrow + 3));
        const size_t colon = rhs_all.find(':');
        if (colon == std::string::npos)
        {
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": connector without label: " + line);
            return;
        }
        const std::string rhs = trim(rhs_all.substr(0, colon));
        std::string_view label = std::string_view(rhs_all).substr(colon + 1);

        Connector c;
        c.line = line_no;
        for (const std::string& a : split(lhs, ','))
            if (!trim(a).empty()) c.producers.push_back(trim(a));
        for (const std::string& a : split(rhs, ','))
            if (!trim(a).empty()) c.consumers.push_back(trim(a));

        label = trim_view(label);
        const size_t sp = label.find(' ');
        if (sp == std::string_view::npos)
        {
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": connector label missing kind: " + line);
            return;
        }
        c.kind = std::string(label.substr(0, sp));
        if (c.kind != "topic" && c.kind != "service")
        {
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": unknown relation kind: " + c.kind);
            return;
        }
        std::string_view after;
        if (!take_quoted(label.substr(sp), c.resolved, after))
        {
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": connector without quoted name: " + line);
            return;
        }
        after = trim_view(after);
        if (after.empty() || after.front() != ':')
        {
            sink_.warning("", "line " + std::to_string(line_no) +
                                  ": connector without interface type: " + line);
            return;
        }
        c.type = trim(after.substr(1));
        connectors_.push_back(std::move(c));
    }

    std::string endpoint_name(const std::string& alias, int line_no)
    {
        auto it = alias_qualified_.find(alias);
        if (it != alias_qualified_.end()) return it->second;
        sink_.warning("", "line " + std::to_string(line_no) +
                              ": connector references unknown part alias '" + alias + "'");
        return "?" + alias;
    }

    void resolve_connectors()
    {
        for (const Connector& c : connectors_)
        {
            std::vector<std::string> prod, cons;
            for (const std::string& a : c.producers) prod.push_back(endpoint_name(a, c.line));
            for (const std::string& a : c.consumers) cons.push_back(endpoint_name(a, c.line));
            std::sort(prod.begin(), prod.end());
            std::sort(cons.begin(), cons.end());
            sets_.add(ElementKind::communication_relation,
                      key_join({c.kind, c.resolved, c.type, join(prod, ","), join(cons, ",")}));
        }
    }

    DiagnosticSink& sink_;
    std::vector<std::string> lines_;
    std::vector<Block> stack_;
    std::vector<Connector> connectors_;
    std::map<std::string, std::string> alias_qualified_;  // part alias -> /ns/name
    ElementSets sets_;
};

}  // namespace

ElementSets parse_plantuml_model(const std::string& text, DiagnosticSink& sink)
{
    return Parser(text, sink).run();
}

ElementSets parse_model_path(const std::filesystem::path& path, DiagnosticSink& sink)
{
    namespace fs = std::filesystem;
    if (!fs::exists(path)) throw InputError("model path does not exist: " + path.generic_string());

    std::vector<fs::path> files;
    if (fs::is_directory(path))
        files = list_files(path, [](const fs::path& p) { return p.extension() == ".puml"; });
    else
        files.push_back(path);
    if (files.empty())
        throw InputError("no .puml files under: " + path.generic_string());

    ElementSets merged;
    for (const fs::path& f : files)
    {
        try
        {
            merged.merge(parse_plantuml_model(read_file(f), sink));
        }
        catch (const AnalysisError& e)
        {
            throw AnalysisError(f.generic_string() + ": " + e.what());
        }
    }
    return merged;
}

}  // namespace archrec::eval
