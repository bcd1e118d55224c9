// Small string helpers used by the scanners and emitters.
#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace archrec
{

inline std::string_view trim_view(std::string_view s)
{
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::string trim(std::string_view s)
{
    return std::string(trim_view(s));
}

inline std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i)
    {
        if (i == s.size() || s[i] == sep)
        {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i)
    {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline bool is_identifier(std::string_view s)
{
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

// "abc" or 'abc' -> abc; returns false when s is not a plain quoted literal.
inline bool unquote(std::string_view s, std::string& out)
{
    if (s.size() < 2) return false;
    const char q = s.front();
    if ((q != '"' && q != '\'') || s.back() != q) return false;
    std::string_view body = s.substr(1, s.size() - 2);
    if (body.find(q) != std::string_view::npos) return false;
    out = std::string(body);
    return true;
}

// Natural order for ids like n2 < n10; falls back to lexicographic.
inline bool natural_less(std::string_view a, std::string_view b)
{
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size())
    {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db)
        {
            size_t ia = i, jb = j;
            while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia]))) ++ia;
            while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb]))) ++jb;
            std::string_view na = a.substr(i, ia - i), nb = b.substr(j, jb - j);
            // compare as numbers: longer digit run wins, then lexicographic
            std::string_view ta = na.substr(na.find_first_not_of('0') == std::string_view::npos
                                                ? na.size() - 1
                                                : na.find_first_not_of('0'));
            std::string_view tb = nb.substr(nb.find_first_not_of('0') == std::string_view::npos
                                                ? nb.size() - 1
                                                : nb.find_first_not_of('0'));
            if (ta.size() != tb.size()) return ta.size() < tb.size();
            if (ta != tb) return ta < tb;
            i = ia;
            j = jb;
        }
        else
        {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

struct NaturalLess
{
    bool operator()(std::string_view a, std::string_view b) const { return natural_less(a, b); }
};

}  // namespace archrec
