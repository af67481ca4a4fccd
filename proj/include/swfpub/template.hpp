#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swfpub {

/// Two-letter template variable codes. TT, DS and DF only occur in the
/// metadata header at the top of a template.
enum class VariableCode {
    TT, DS, DF, TI, BG, MU, MT, PO, PE, WI, HE, MO, PL,
    LO, QU, SC, SA, HA, WM, ME, DE, IM, IS, IU, IW, IH,
};

inline constexpr std::array<std::string_view, 26> kVariableNames{
    "TT", "DS", "DF", "TI", "BG", "MU", "MT", "PO", "PE", "WI", "HE", "MO", "PL",
    "LO", "QU", "SC", "SA", "HA", "WM", "ME", "DE", "IM", "IS", "IU", "IW", "IH",
};

inline std::string_view name_of(VariableCode c) {
    return kVariableNames[static_cast<std::size_t>(c)];
}

inline std::optional<VariableCode> parse_code(std::string_view two) {
    for (std::size_t i = 0; i < kVariableNames.size(); ++i) {
        if (kVariableNames[i] == two) {
            return static_cast<VariableCode>(i);
        }
    }
    return std::nullopt;
}

inline bool is_metadata_code(VariableCode c) {
    return c == VariableCode::TT || c == VariableCode::DS || c == VariableCode::DF;
}

enum class TemplateErrorKind { UnknownVariable, DanglingDollar, UnterminatedDescription, MissingValue };

inline const char* to_string(TemplateErrorKind k) {
    switch (k) {
    case TemplateErrorKind::UnknownVariable: return "UnknownVariable";
    case TemplateErrorKind::DanglingDollar: return "DanglingDollar";
    case TemplateErrorKind::UnterminatedDescription: return "UnterminatedDescription";
    case TemplateErrorKind::MissingValue: return "MissingValue";
    }
    return "Unknown";
}

class TemplateError : public std::runtime_error {
public:
    TemplateError(TemplateErrorKind kind, std::size_t line, std::size_t column,
                  const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) +
                             (line ? " at " + std::to_string(line) + ":" + std::to_string(column)
                                   : std::string()) +
                             ": " + what),
          kind_(kind), line_(line), column_(column) {}

    TemplateErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    TemplateErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
};

struct Segment {
    enum class Kind { Literal, Variable };
    Kind kind = Kind::Literal;
    std::string text;                          // Literal only, `$` already unescaped
    VariableCode code = VariableCode::TI;      // Variable only

    static Segment literal(std::string s) { return {Kind::Literal, std::move(s), VariableCode::TI}; }
    static Segment variable(VariableCode c) { return {Kind::Variable, {}, c}; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Template {
    std::string headline;
    std::string description;
    std::vector<Segment> body;
    std::string metadata_source; // the $TT/$DS/$DF lines exactly as read

    std::set<VariableCode> variables() const {
        std::set<VariableCode> out;
        for (const auto& s : body) {
            if (s.kind == Segment::Kind::Variable) {
                out.insert(s.code);
            }
        }
        return out;
    }
};

using SubstitutionContext = std::map<VariableCode, std::string>;

namespace detail {

struct Line {
    std::string_view content;    // without terminator
    std::string_view terminator; // "\n", "\r\n", "\r" or empty at end of input
};

inline Line next_line(std::string_view src, std::size_t from) {
    const std::size_t end = src.find_first_of("\r\n", from);
    if (end == std::string_view::npos) {
        return {src.substr(from), {}};
    }
    const std::size_t term = (src[end] == '\r' && end + 1 < src.size() && src[end + 1] == '\n') ? 2 : 1;
    return {src.substr(from, end - from), src.substr(end, term)};
}

inline bool starts_with_code(std::string_view line, std::string_view code) {
    return line.size() >= 3 && line[0] == '$' && line.substr(1, 2) == code;
}

inline void parse_body(std::string_view src, std::size_t offset, std::size_t line,
                       std::size_t column, std::vector<Segment>& out) {
    std::string literal;
    auto flush = [&] {
        if (!literal.empty()) {
            out.push_back(Segment::literal(std::move(literal)));
            literal.clear();
        }
    };
    for (std::size_t i = offset; i < src.size();) {
        const char c = src[i];
        if (c == '\\' && i + 1 < src.size() && src[i + 1] == '$') {
            literal += '$';
            i += 2;
            column += 2;
            continue;
        }
        if (c == '$') {
            if (i + 2 >= src.size()) {
                throw TemplateError(TemplateErrorKind::DanglingDollar, line, column,
                                    "'$' needs a two-letter code");
            }
            const std::string_view two = src.substr(i + 1, 2);
            const auto code = parse_code(two);
            if (!code || is_metadata_code(*code)) {
                throw TemplateError(TemplateErrorKind::UnknownVariable, line, column,
                                    "unknown template variable $" + std::string(two));
            }
            flush();
            out.push_back(Segment::variable(*code));
            i += 3;
            column += 3;
            continue;
        }
        literal += c;
        if (c == '\n' || (c == '\r' && !(i + 1 < src.size() && src[i + 1] == '\n'))) {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++i;
    }
    flush();
}

} // namespace detail

/// Splits a template into its optional `$TT` headline, optional `$DS`..`$DF`
/// description and the substitutable body. Line endings are kept as found.
inline Template parse_template(std::string_view src) {
    Template t;
    std::size_t pos = 0;
    std::size_t line_no = 1;
    std::size_t column = 1;
    auto consume = [&](const detail::Line& l) {
        pos += l.content.size() + l.terminator.size();
        ++line_no;
    };

    auto l = detail::next_line(src, pos);
    if (detail::starts_with_code(l.content, "TT")) {
        t.headline = std::string(l.content.substr(3));
        consume(l);
        l = detail::next_line(src, pos);
    }
    if (detail::starts_with_code(l.content, "DS")) {
        const std::size_t ds_line = line_no;
        std::string_view carry;
        bool have_text = l.content.size() > 3;
        if (have_text) {
            t.description = std::string(l.content.substr(3));
            carry = l.terminator;
        }
        consume(l);
        bool closed = false;
        while (pos < src.size()) {
            const auto d = detail::next_line(src, pos);
            if (detail::starts_with_code(d.content, "DF")) {
                closed = true;
                if (d.content.size() > 3) {
                    // text after `$DF` on the same line is body
                    pos += 3;
                    column = 4;
                } else {
                    consume(d);
                }
                break;
            }
            if (have_text) {
                t.description += carry;
            }
            t.description += d.content;
            carry = d.terminator;
            have_text = true;
            consume(d);
        }
        if (!closed) {
            throw TemplateError(TemplateErrorKind::UnterminatedDescription, ds_line, 1,
                                "$DS has no matching $DF line");
        }
    }
    t.metadata_source = std::string(src.substr(0, pos));
    detail::parse_body(src, pos, line_no, column, t.body);
    return t;
}

/// Body source text: variables as `$XX`, literal dollars re-escaped as `\$`.
inline std::string serialize_body(const Template& t) {
    std::string out;
    for (const auto& s : t.body) {
        if (s.kind == Segment::Kind::Variable) {
            out += '$';
            out += name_of(s.code);
            continue;
        }
        for (const char c : s.text) {
            if (c == '$') {
                out += '\\';
            }
            out += c;
        }
    }
    return out;
}

inline std::string serialize(const Template& t) { return t.metadata_source + serialize_body(t); }

/// Single-pass substitution; expansions are copied verbatim, never re-scanned.
inline std::string render(const Template& t, const SubstitutionContext& ctx) {
    std::size_t total = 0;
    for (const auto& s : t.body) {
        if (s.kind == Segment::Kind::Literal) {
            total += s.text.size();
            continue;
        }
        const auto it = ctx.find(s.code);
        if (it == ctx.end()) {
            throw TemplateError(TemplateErrorKind::MissingValue, 0, 0,
                                "no value for $" + std::string(name_of(s.code)));
        }
        total += it->second.size();
    }
    std::string out;
    out.reserve(total);
    for (const auto& s : t.body) {
        out += s.kind == Segment::Kind::Literal ? s.text : ctx.at(s.code);
    }
    return out;
}

} // namespace swfpub
