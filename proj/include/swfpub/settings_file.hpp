#pragma once

#include "swfpub/publish_settings.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace swfpub {

/// Keys accepted in a settings file and as --<key> command-line overrides.
inline constexpr std::array<std::string_view, 19> kSettingKeys{
    "dimensions", "play",          "loop",         "quality",         "bgcolor",
    "scale",      "align",         "salign",       "wmode",           "menu",
    "devicefont", "base",          "swliveconnect", "title",          "player-version",
    "codebase-url", "pluginspage-url", "alt-image", "image-format",
};

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

inline std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

[[noreturn]] inline void bad_value(std::string_view key, std::string_view value) {
    throw SettingsError("invalid value for " + std::string(key) + ": '" + std::string(value) + "'");
}

inline bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true") {
        return true;
    }
    if (v == "false") {
        return false;
    }
    bad_value(key, v);
}

inline bool is_unset(std::string_view v) { return v.empty() || v == "none"; }

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view key, std::string_view v, const std::array<Enum, N>& values,
                bool case_insensitive = true) {
    const std::string want = case_insensitive ? lower_ascii(v) : std::string(v);
    for (const auto e : values) {
        const std::string name = case_insensitive ? lower_ascii(to_string(e)) : std::string(to_string(e));
        if (name == want) {
            return e;
        }
    }
    bad_value(key, v);
}

inline std::uint32_t parse_uint(std::string_view key, std::string_view v) {
    std::uint32_t n = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        bad_value(key, v);
    }
    return n;
}

inline Dimensions parse_dimensions(std::string_view key, std::string_view v) {
    if (v == "match") {
        return Dimensions::match_movie();
    }
    const auto x = v.find('x');
    if (x == std::string_view::npos) {
        bad_value(key, v);
    }
    std::string_view w = v.substr(0, x);
    std::string_view h = v.substr(x + 1);
    const bool wp = !w.empty() && w.back() == '%';
    const bool hp = !h.empty() && h.back() == '%';
    if (wp != hp) {
        bad_value(key, v);
    }
    if (wp) {
        w.remove_suffix(1);
        h.remove_suffix(1);
        return Dimensions::percent(parse_uint(key, w), parse_uint(key, h));
    }
    return Dimensions::pixels(parse_uint(key, w), parse_uint(key, h));
}

inline Rgb parse_color(std::string_view key, std::string_view v) {
    std::string_view hex = v;
    if (!hex.empty() && hex.front() == '#') {
        hex.remove_prefix(1);
    }
    unsigned value = 0;
    const auto [p, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
    if (hex.size() != 6 || ec != std::errc{} || p != hex.data() + hex.size()) {
        bad_value(key, v);
    }
    return {static_cast<std::uint8_t>(value >> 16), static_cast<std::uint8_t>(value >> 8),
            static_cast<std::uint8_t>(value)};
}

} // namespace detail

/// Applies one `key = value` pair. Optional settings accept "none" to clear.
inline void apply_setting(PublishSettings& s, std::string_view key, std::string_view raw) {
    using namespace detail;
    const std::string_view v = trim_ws(raw);
    if (key == "dimensions") {
        s.dimensions = parse_dimensions(key, v);
    } else if (key == "play") {
        s.play = parse_bool(key, v);
    } else if (key == "loop") {
        s.loop = parse_bool(key, v);
    } else if (key == "quality") {
        s.quality = parse_enum(key, v, std::array{Quality::Low, Quality::AutoLow, Quality::AutoHigh,
                                                  Quality::High, Quality::Best});
    } else if (key == "bgcolor") {
        s.bgcolor_override = is_unset(v) ? std::nullopt : std::optional(parse_color(key, v));
    } else if (key == "scale") {
        s.scale = parse_enum(key, v, std::array{Scale::ShowAll, Scale::NoBorder, Scale::ExactFit});
    } else if (key == "align") {
        s.align = is_unset(v) ? std::nullopt
                              : std::optional(parse_enum(key, v, std::array{Align::L, Align::R,
                                                                            Align::T, Align::B}));
    } else if (key == "salign") {
        s.salign = is_unset(v)
                       ? std::nullopt
                       : std::optional(parse_enum(
                             key, v,
                             std::array{SAlign::L, SAlign::R, SAlign::T, SAlign::B, SAlign::TL,
                                        SAlign::TR, SAlign::BL, SAlign::BR}));
    } else if (key == "wmode") {
        s.wmode = parse_enum(key, v, std::array{WMode::Window, WMode::Opaque, WMode::Transparent});
    } else if (key == "menu") {
        s.menu = parse_bool(key, v);
    } else if (key == "devicefont") {
        s.devicefont = parse_bool(key, v);
    } else if (key == "base") {
        s.base = is_unset(v) ? std::nullopt : std::optional<std::string>(v);
    } else if (key == "swliveconnect") {
        s.swliveconnect = is_unset(v) ? std::nullopt : std::optional(parse_bool(key, v));
    } else if (key == "title") {
        s.title = is_unset(v) ? std::nullopt : std::optional<std::string>(v);
    } else if (key == "player-version") {
        s.player_version = std::string(v);
    } else if (key == "codebase-url") {
        s.codebase_url = std::string(v);
    } else if (key == "pluginspage-url") {
        s.pluginspage_url = std::string(v);
    } else if (key == "alt-image") {
        s.alt_image = is_unset(v) ? std::nullopt : std::optional<std::string>(v);
    } else if (key == "image-format") {
        s.image_format = parse_enum(key, v, std::array{ImageFormat::GIF, ImageFormat::JPEG,
                                                       ImageFormat::PNG});
    } else {
        throw SettingsError("unknown setting '" + std::string(key) + "'");
    }
}

/// Line-oriented `key = value` text; `#` starts a comment line.
inline PublishSettings parse_settings_file(std::string_view text, PublishSettings base = {}) {
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        const std::string_view l = detail::trim_ws(line);
        if (l.empty() || l.front() == '#') {
            continue;
        }
        const auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw SettingsError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = detail::lower_ascii(detail::trim_ws(l.substr(0, eq)));
        try {
            apply_setting(base, key, l.substr(eq + 1));
        } catch (const SettingsError& e) {
            throw SettingsError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate(base);
    return base;
}

} // namespace swfpub
