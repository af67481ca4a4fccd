#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace swfpub {

class MalformedHtml : public std::runtime_error {
public:
    explicit MalformedHtml(const std::string& what) : std::runtime_error("MalformedHtml: " + what) {}
};

namespace html {

inline std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// One start or end tag found in a document.
struct Tag {
    std::string name; // uppercased
    bool closing = false;
    std::size_t begin = 0; // offset of '<'
    std::size_t end = 0;   // offset one past '>'
    std::vector<std::pair<std::string, std::string>> attributes; // names uppercased
};

/// Parses the tag starting at `at` (which holds '<'); returns nullopt when
/// the text there is not a tag.
inline std::optional<Tag> read_tag(std::string_view doc, std::size_t at) {
    std::size_t i = at + 1;
    Tag t;
    t.begin = at;
    if (i < doc.size() && doc[i] == '/') {
        t.closing = true;
        ++i;
    }
    const std::size_t name_start = i;
    while (i < doc.size() && std::isalnum(static_cast<unsigned char>(doc[i]))) {
        ++i;
    }
    if (i == name_start) {
        return std::nullopt;
    }
    t.name = upper(doc.substr(name_start, i - name_start));
    for (;;) {
        while (i < doc.size() && is_space(doc[i])) {
            ++i;
        }
        if (i >= doc.size()) {
            return std::nullopt;
        }
        if (doc[i] == '>') {
            t.end = i + 1;
            return t;
        }
        if (doc[i] == '/' ) {
            ++i;
            continue;
        }
        const std::size_t an = i;
        while (i < doc.size() && !is_space(doc[i]) && doc[i] != '=' && doc[i] != '>' &&
               doc[i] != '"' && doc[i] != '\'') {
            ++i;
        }
        if (i == an) {
            ++i; // stray quote
            continue;
        }
        std::string name = upper(doc.substr(an, i - an));
        std::string value;
        std::size_t j = i;
        while (j < doc.size() && is_space(doc[j])) {
            ++j;
        }
        if (j < doc.size() && doc[j] == '=') {
            ++j;
            while (j < doc.size() && is_space(doc[j])) {
                ++j;
            }
            if (j < doc.size() && (doc[j] == '"' || doc[j] == '\'')) {
                const char q = doc[j];
                const std::size_t close = doc.find(q, j + 1);
                if (close == std::string_view::npos) {
                    return std::nullopt;
                }
                value = std::string(doc.substr(j + 1, close - j - 1));
                j = close + 1;
            } else {
                const std::size_t vs = j;
                while (j < doc.size() && !is_space(doc[j]) && doc[j] != '>') {
                    ++j;
                }
                value = std::string(doc.substr(vs, j - vs));
            }
            i = j;
        }
        t.attributes.emplace_back(std::move(name), std::move(value));
    }
}

/// All tags in document order; comments are skipped.
inline std::vector<Tag> scan_tags(std::string_view doc) {
    std::vector<Tag> tags;
    std::size_t i = 0;
    while ((i = doc.find('<', i)) != std::string_view::npos) {
        if (doc.substr(i, 4) == "<!--") {
            const std::size_t close = doc.find("-->", i + 4);
            if (close == std::string_view::npos) {
                break;
            }
            i = close + 3;
            continue;
        }
        if (auto t = read_tag(doc, i)) {
            i = t->end;
            tags.push_back(std::move(*t));
        } else {
            ++i;
        }
    }
    return tags;
}

inline const std::string* find_attr(const Tag& t, std::string_view name) {
    for (const auto& [n, v] : t.attributes) {
        if (n == name) {
            return &v;
        }
    }
    return nullptr;
}

} // namespace html

/// Compares the first OBJECT element's PARAM values against the first EMBED
/// element's attributes (MOVIE pairs with SRC) and warns on every shared name
/// whose values differ. Also warns when both exist but EMBED is not the last
/// element inside OBJECT.
inline std::vector<std::string> verify_tag_consistency(std::string_view doc) {
    const auto tags = html::scan_tags(doc);
    std::optional<std::size_t> object_open;
    std::optional<std::size_t> object_close;
    int depth = 0;
    for (std::size_t k = 0; k < tags.size(); ++k) {
        if (tags[k].name != "OBJECT") {
            continue;
        }
        if (!tags[k].closing) {
            if (depth == 0 && !object_open && !object_close) {
                object_open = k;
            }
            ++depth;
        } else {
            if (depth == 0) {
                throw MalformedHtml("</OBJECT> without a matching <OBJECT>");
            }
            if (--depth == 0 && object_open && !object_close) {
                object_close = k;
            }
        }
    }
    if (depth != 0) {
        throw MalformedHtml("<OBJECT> is never closed");
    }

    std::optional<std::size_t> embed;
    for (std::size_t k = 0; k < tags.size(); ++k) {
        if (tags[k].name == "EMBED" && !tags[k].closing) {
            embed = k;
            break;
        }
    }
    std::vector<std::string> warnings;
    if (!object_open || !embed) {
        return warnings;
    }

    std::map<std::string, std::string> params;
    for (std::size_t k = *object_open + 1; k < *object_close; ++k) {
        const auto& t = tags[k];
        if (t.name != "PARAM" || t.closing) {
            continue;
        }
        const auto* name = html::find_attr(t, "NAME");
        const auto* value = html::find_attr(t, "VALUE");
        if (name && value) {
            params.emplace(html::upper(*name), *value);
        }
    }
    for (const auto& [raw_name, value] : tags[*embed].attributes) {
        const std::string name = raw_name == "SRC" ? "MOVIE" : raw_name;
        const auto it = params.find(name);
        if (it != params.end() && it->second != value) {
            warnings.push_back(name + " differs: OBJECT PARAM \"" + it->second +
                               "\" vs EMBED \"" + value + "\"");
        }
    }

    const bool inside = *embed > *object_open && *embed < *object_close;
    bool last_inside = false;
    if (inside) {
        std::size_t after = *embed + 1;
        if (after < tags.size() && tags[after].name == "EMBED" && tags[after].closing) {
            ++after;
        }
        const auto gap = doc.substr(tags[after - 1].end, tags[*object_close].begin - tags[after - 1].end);
        last_inside = after == *object_close &&
                      gap.find_first_not_of(" \t\r\n") == std::string_view::npos;
    }
    if (!last_inside) {
        warnings.push_back("EMBED is not placed immediately before </OBJECT>");
    }
    return warnings;
}

} // namespace swfpub
