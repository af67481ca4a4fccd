#pragma once

#include "swfpub/bit_reader.hpp"
#include "swfpub/geometry.hpp"
#include "swfpub/swf.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swfpub {

struct Rgb {
    std::uint8_t r = 255;
    std::uint8_t g = 255;
    std::uint8_t b = 255;

    friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

enum class ActionSource { MainTimeline, Button };

inline const char* to_string(ActionSource s) {
    return s == ActionSource::MainTimeline ? "main-timeline" : "button";
}

struct UrlAction {
    std::string url;
    std::string target;
    std::uint32_t frame_index = 0;
    ActionSource source = ActionSource::MainTimeline;

    friend bool operator==(const UrlAction&, const UrlAction&) = default;
};

struct ButtonHotspot {
    std::uint16_t button_id = 0;
    std::string url;
    std::string target;
    Rect bounds_twips;
    std::uint32_t frame_index = 0;

    friend bool operator==(const ButtonHotspot&, const ButtonHotspot&) = default;
};

struct FrameLabel {
    std::uint32_t frame_index = 0;
    std::string label;

    friend bool operator==(const FrameLabel&, const FrameLabel&) = default;
};

/// Everything the publisher needs to know about a movie. Strings are UTF-8.
struct MovieSummary {
    std::uint32_t width_px = 0;
    std::uint32_t height_px = 0;
    std::uint16_t frame_rate = 0; // frames per second = frame_rate / 256
    std::uint16_t frame_count = 0;
    std::uint8_t version = 0;
    Rgb background_color;
    std::vector<FrameLabel> frame_labels;
    std::vector<std::string> texts;
    std::vector<UrlAction> url_actions;
    std::vector<ButtonHotspot> hotspots;
    std::string movie_stem;
    std::vector<std::string> warnings;

    std::string movie_file() const { return movie_stem + ".swf"; }
};

inline constexpr const char* kMapFrameLabel = "#map";

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

/// Copies valid UTF-8 through; each invalid sequence becomes U+FFFD.
/// Returns false when a replacement happened.
inline bool sanitize_utf8(std::span<const std::uint8_t> in, std::string& out) {
    bool clean = true;
    std::size_t i = 0;
    while (i < in.size()) {
        const std::uint8_t lead = in[i];
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (lead < 0x80) {
            out += static_cast<char>(lead);
            ++i;
            continue;
        } else if ((lead & 0xE0) == 0xC0) {
            len = 2;
            cp = lead & 0x1F;
        } else if ((lead & 0xF0) == 0xE0) {
            len = 3;
            cp = lead & 0x0F;
        } else if ((lead & 0xF8) == 0xF0) {
            len = 4;
            cp = lead & 0x07;
        }
        bool ok = len != 0 && i + len <= in.size();
        for (std::size_t k = 1; ok && k < len; ++k) {
            if ((in[i + k] & 0xC0) != 0x80) {
                ok = false;
            } else {
                cp = (cp << 6) | (in[i + k] & 0x3F);
            }
        }
        if (ok) {
            static constexpr std::uint32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
            ok = cp >= min_for_len[len] && cp <= 0x10FFFF && (cp < 0xD800 || cp > 0xDFFF);
        }
        if (!ok) {
            append_utf8(out, 0xFFFD);
            clean = false;
            ++i;
            continue;
        }
        out.append(reinterpret_cast<const char*>(in.data() + i), len);
        i += len;
    }
    return clean;
}

/// SWF 5 and earlier store strings in Latin-1; 6 and later in UTF-8.
class StringDecoder {
public:
    explicit StringDecoder(std::uint8_t version) : latin1_(version <= 5) {}

    std::string decode(std::span<const std::uint8_t> raw) {
        std::string out;
        if (latin1_) {
            for (const auto b : raw) {
                append_utf8(out, b);
            }
        } else if (!sanitize_utf8(raw, out)) {
            replaced_ = true;
        }
        return out;
    }

    bool replaced_any() const noexcept { return replaced_; }

private:
    bool latin1_;
    bool replaced_ = false;
};

inline constexpr std::uint8_t kActionEnd = 0x00;
inline constexpr std::uint8_t kActionGetUrl = 0x83;

struct GetUrl {
    std::string url;
    std::string target;
};

/// Walks an action record list through its 0x00 terminator and returns
/// every static GetURL in order.
inline std::vector<GetUrl> read_get_urls(BitReader& in, StringDecoder& strings) {
    std::vector<GetUrl> found;
    for (;;) {
        const std::uint8_t code = in.read_u8();
        if (code == kActionEnd) {
            return found;
        }
        if (code < 0x80) {
            continue;
        }
        const std::uint16_t length = in.read_u16();
        const auto payload = in.read_bytes(length);
        if (code != kActionGetUrl) {
            continue;
        }
        BitReader args(payload);
        args.set_error_kind(SwfErrorKind::MalformedTag);
        GetUrl g;
        g.url = strings.decode(args.read_cstring());
        g.target = strings.decode(args.read_cstring());
        if (!g.url.empty()) {
            found.push_back(std::move(g));
        }
    }
}

inline BitReader body_reader(const TagRecord& t) {
    BitReader in(t.body);
    in.set_error_kind(SwfErrorKind::MalformedTag);
    return in;
}

struct ButtonRecord {
    std::uint8_t flags = 0;
    std::uint16_t character_id = 0;
    Matrix matrix;
};

inline constexpr std::uint8_t kButtonStateHitTest = 0x08;

struct DefinedButton {
    std::uint16_t id = 0;
    std::vector<ButtonRecord> records;
    std::vector<GetUrl> urls;
};

inline DefinedButton read_define_button(const TagRecord& t, StringDecoder& strings) {
    auto in = body_reader(t);
    DefinedButton b;
    b.id = in.read_u16();
    for (;;) {
        const std::uint8_t flags = in.read_u8();
        if (flags == 0) {
            break;
        }
        ButtonRecord rec;
        rec.flags = flags;
        rec.character_id = in.read_u16();
        in.skip(2); // depth
        rec.matrix = read_matrix(in);
        b.records.push_back(rec);
    }
    b.urls = read_get_urls(in, strings);
    return b;
}

inline bool is_shape_tag(std::uint16_t code) {
    return code == tag::DefineShape || code == tag::DefineShape2 || code == tag::DefineShape3;
}

// Frame counter that never exceeds the last declared frame.
class FrameClock {
public:
    explicit FrameClock(std::uint16_t frame_count)
        : last_(frame_count > 0 ? frame_count - 1u : 0u) {}

    void advance() noexcept { ++shown_; }

    std::uint32_t current() const noexcept { return shown_ < last_ ? shown_ : last_; }

    bool overrun() const noexcept { return shown_ > last_ + 1; }

private:
    std::uint32_t last_;
    std::uint32_t shown_ = 0;
};

struct HotspotScan {
    std::vector<ButtonHotspot> all;
    std::vector<std::string> warnings;
    std::optional<std::uint32_t> map_frame;
};

inline HotspotScan scan_hotspots(const ParsedMovie& parsed, StringDecoder& strings) {
    HotspotScan scan;
    std::map<std::uint16_t, Rect> shape_bounds;
    FrameClock clock(parsed.header.frame_count);
    for (const auto& t : parsed.tags) {
        if (t.code == tag::ShowFrame) {
            clock.advance();
        } else if (is_shape_tag(t.code)) {
            auto in = body_reader(t);
            const std::uint16_t id = in.read_u16();
            shape_bounds[id] = read_rect(in).normalized();
        } else if (t.code == tag::FrameLabel) {
            auto in = body_reader(t);
            if (!scan.map_frame && strings.decode(in.read_cstring()) == kMapFrameLabel) {
                scan.map_frame = clock.current();
            }
        } else if (t.code == tag::DefineButton) {
            const auto button = read_define_button(t, strings);
            if (button.urls.empty()) {
                continue;
            }
            std::optional<Rect> bounds;
            for (const auto& rec : button.records) {
                if (!(rec.flags & kButtonStateHitTest)) {
                    continue;
                }
                const auto shape = shape_bounds.find(rec.character_id);
                if (shape == shape_bounds.end()) {
                    scan.warnings.push_back("UnresolvedCharacter: button " +
                                            std::to_string(button.id) +
                                            " hit record references character " +
                                            std::to_string(rec.character_id));
                    continue;
                }
                const Rect placed = transform_bounds(rec.matrix, shape->second);
                bounds = bounds ? bounds->united(placed) : placed;
            }
            if (!bounds) {
                scan.warnings.push_back("button " + std::to_string(button.id) +
                                        " has a GetURL action but no resolvable hit area");
                continue;
            }
            scan.all.push_back(ButtonHotspot{button.id, button.urls.front().url,
                                             button.urls.front().target, *bounds,
                                             clock.current()});
        }
    }
    return scan;
}

inline std::vector<ButtonHotspot> select_map_frame(HotspotScan scan) {
    if (!scan.map_frame) {
        return std::move(scan.all);
    }
    std::vector<ButtonHotspot> in_frame;
    for (auto& h : scan.all) {
        if (h.frame_index == *scan.map_frame) {
            in_frame.push_back(std::move(h));
        }
    }
    return in_frame;
}

} // namespace detail

/// Button hotspots from DefineButton tags that carry a GetURL action. When a
/// frame is labeled "#map", only buttons defined in that frame are kept.
/// Unresolvable hit records are skipped and reported through `warnings`.
inline std::vector<ButtonHotspot> extract_hotspots(const ParsedMovie& parsed,
                                                   std::vector<std::string>* warnings = nullptr) {
    detail::StringDecoder strings(parsed.header.version);
    auto scan = detail::scan_hotspots(parsed, strings);
    if (warnings) {
        warnings->insert(warnings->end(), scan.warnings.begin(), scan.warnings.end());
    }
    return detail::select_map_frame(std::move(scan));
}

/// Single walk of the tag stream collecting stage facts, labels, edit-text
/// strings, GetURL actions and hotspots. Unknown tags are skipped.
inline MovieSummary summarize_movie(const ParsedMovie& parsed, std::string movie_stem) {
    MovieSummary s;
    const auto& hdr = parsed.header;
    const Rect stage = hdr.frame_size.normalized();
    s.width_px = static_cast<std::uint32_t>(twips_to_pixels(stage.width_twips()));
    s.height_px = static_cast<std::uint32_t>(twips_to_pixels(stage.height_twips()));
    s.frame_rate = hdr.frame_rate;
    s.frame_count = hdr.frame_count;
    s.version = hdr.version;
    s.movie_stem = std::move(movie_stem);
    if (parsed.length_mismatch) {
        s.warnings.push_back("declared file length " + std::to_string(hdr.declared_file_length) +
                             " differs from actual length " +
                             std::to_string(parsed.actual_file_length));
    }

    detail::StringDecoder strings(hdr.version);
    detail::FrameClock clock(hdr.frame_count);
    for (const auto& t : parsed.tags) {
        switch (t.code) {
        case tag::ShowFrame:
            clock.advance();
            break;
        case tag::SetBackgroundColor: {
            auto in = detail::body_reader(t);
            s.background_color.r = in.read_u8();
            s.background_color.g = in.read_u8();
            s.background_color.b = in.read_u8();
            break;
        }
        case tag::FrameLabel: {
            auto in = detail::body_reader(t);
            s.frame_labels.push_back({clock.current(), strings.decode(in.read_cstring())});
            break;
        }
        case tag::DefineEditText: {
            auto in = detail::body_reader(t);
            in.skip(2); // character id
            read_rect(in);
            const std::uint8_t f1 = in.read_u8();
            const std::uint8_t f2 = in.read_u8();
            const bool has_text = f1 & 0x80;
            const bool has_text_color = f1 & 0x04;
            const bool has_max_length = f1 & 0x02;
            const bool has_font = f1 & 0x01;
            const bool has_font_class = f2 & 0x80;
            const bool has_layout = f2 & 0x20;
            if (has_font) {
                in.skip(2);
            }
            if (has_font_class) {
                in.read_cstring();
            }
            if (has_font || has_font_class) {
                in.skip(2); // height
            }
            if (has_text_color) {
                in.skip(4);
            }
            if (has_max_length) {
                in.skip(2);
            }
            if (has_layout) {
                in.skip(9);
            }
            in.read_cstring(); // variable name
            if (has_text) {
                s.texts.push_back(strings.decode(in.read_cstring()));
            }
            break;
        }
        case tag::DoAction: {
            auto in = detail::body_reader(t);
            for (auto& g : detail::read_get_urls(in, strings)) {
                s.url_actions.push_back({std::move(g.url), std::move(g.target), clock.current(),
                                         ActionSource::MainTimeline});
            }
            break;
        }
        case tag::DefineButton: {
            for (auto& g : detail::read_define_button(t, strings).urls) {
                s.url_actions.push_back({std::move(g.url), std::move(g.target), clock.current(),
                                         ActionSource::Button});
            }
            break;
        }
        default:
            break;
        }
    }
    if (clock.overrun()) {
        s.warnings.push_back("movie shows more frames than its header declares (" +
                             std::to_string(hdr.frame_count) + ")");
    }

    auto scan = detail::scan_hotspots(parsed, strings);
    s.warnings.insert(s.warnings.end(), scan.warnings.begin(), scan.warnings.end());
    s.hotspots = detail::select_map_frame(std::move(scan));
    if (strings.replaced_any()) {
        s.warnings.push_back("undecodable string bytes were replaced with U+FFFD");
    }
    return s;
}

} // namespace swfpub
