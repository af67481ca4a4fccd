#pragma once

// Test-only SWF writer: the inverse of the library's readers, used to
// assemble fixtures and to round-trip RECT / MATRIX records.

#include "swfpub/geometry.hpp"

#include <zlib.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace swftest {

using Bytes = std::vector<std::uint8_t>;

class BitWriter {
public:
    void write_ubits(std::uint32_t v, unsigned n) {
        for (unsigned i = n; i-- > 0;) {
            if (bit_ == 0) {
                out_.push_back(0);
            }
            if ((v >> i) & 1u) {
                out_.back() |= static_cast<std::uint8_t>(0x80u >> bit_);
            }
            bit_ = (bit_ + 1) % 8;
        }
    }
    void write_sbits(std::int32_t v, unsigned n) { write_ubits(static_cast<std::uint32_t>(v), n); }
    void align() { bit_ = 0; }
    const Bytes& bytes() const { return out_; }

private:
    Bytes out_;
    unsigned bit_ = 0;
};

// Smallest two's-complement width that holds v.
inline unsigned min_sbits(std::int32_t v) {
    unsigned n = 1;
    while (n < 32) {
        const std::int64_t lo = -(std::int64_t{1} << (n - 1));
        const std::int64_t hi = (std::int64_t{1} << (n - 1)) - 1;
        if (v >= lo && v <= hi) {
            break;
        }
        ++n;
    }
    return n;
}

inline unsigned min_sbits_all(std::initializer_list<std::int32_t> vs) {
    unsigned n = 0;
    for (const auto v : vs) {
        if (v != 0) {
            n = std::max(n, min_sbits(v));
        }
    }
    return n;
}

inline void put_rect(BitWriter& w, const swfpub::Rect& r) {
    const unsigned n = min_sbits_all({r.x_min, r.x_max, r.y_min, r.y_max});
    if (n > 31) {
        throw std::out_of_range("rect field needs more than 31 bits");
    }
    w.write_ubits(n, 5);
    w.write_sbits(r.x_min, n);
    w.write_sbits(r.x_max, n);
    w.write_sbits(r.y_min, n);
    w.write_sbits(r.y_max, n);
    w.align();
}

inline Bytes serialize_rect(const swfpub::Rect& r) {
    BitWriter w;
    put_rect(w, r);
    return w.bytes();
}

inline void put_matrix(BitWriter& w, const swfpub::Matrix& m) {
    const bool has_scale = m.scale_x != swfpub::kFixedOne || m.scale_y != swfpub::kFixedOne;
    w.write_ubits(has_scale, 1);
    if (has_scale) {
        const unsigned n = std::max(1u, min_sbits_all({m.scale_x, m.scale_y}));
        w.write_ubits(n, 5);
        w.write_sbits(m.scale_x, n);
        w.write_sbits(m.scale_y, n);
    }
    const bool has_rotate = m.rotate_skew_0 != 0 || m.rotate_skew_1 != 0;
    w.write_ubits(has_rotate, 1);
    if (has_rotate) {
        const unsigned n = min_sbits_all({m.rotate_skew_0, m.rotate_skew_1});
        w.write_ubits(n, 5);
        w.write_sbits(m.rotate_skew_0, n);
        w.write_sbits(m.rotate_skew_1, n);
    }
    const unsigned n = min_sbits_all({m.translate_x, m.translate_y});
    w.write_ubits(n, 5);
    w.write_sbits(m.translate_x, n);
    w.write_sbits(m.translate_y, n);
    w.align();
}

inline Bytes serialize_matrix(const swfpub::Matrix& m) {
    BitWriter w;
    put_matrix(w, m);
    return w.bytes();
}

inline void put_u16(Bytes& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(Bytes& b, std::uint32_t v) {
    put_u16(b, static_cast<std::uint16_t>(v));
    put_u16(b, static_cast<std::uint16_t>(v >> 16));
}

inline void put_cstring(Bytes& b, const std::string& s) {
    b.insert(b.end(), s.begin(), s.end());
    b.push_back(0);
}

inline void append(Bytes& b, const Bytes& more) { b.insert(b.end(), more.begin(), more.end()); }

// Action list helpers.
inline Bytes action_get_url(const std::string& url, const std::string& target) {
    Bytes payload;
    put_cstring(payload, url);
    put_cstring(payload, target);
    Bytes a{0x83};
    put_u16(a, static_cast<std::uint16_t>(payload.size()));
    append(a, payload);
    return a;
}

inline Bytes action_end() { return {0x00}; }

struct ButtonRecordSpec {
    std::uint8_t flags = 0x08;
    std::uint16_t character_id = 0;
    std::uint16_t depth = 1;
    swfpub::Matrix matrix;
};

class SwfBuilder {
public:
    SwfBuilder(std::uint8_t version, swfpub::Rect stage, std::uint16_t frame_rate_8_8,
               std::uint16_t frame_count)
        : version_(version), stage_(stage), rate_(frame_rate_8_8), count_(frame_count) {}

    SwfBuilder& tag(std::uint16_t code, const Bytes& body, bool force_long = false) {
        if (body.size() < 63 && !force_long) {
            put_u16(tags_, static_cast<std::uint16_t>((code << 6) | body.size()));
        } else {
            put_u16(tags_, static_cast<std::uint16_t>((code << 6) | 0x3F));
            put_u32(tags_, static_cast<std::uint32_t>(body.size()));
        }
        append(tags_, body);
        return *this;
    }

    SwfBuilder& background(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        return tag(9, Bytes{r, g, b});
    }

    SwfBuilder& show_frame() { return tag(1, {}); }

    SwfBuilder& frame_label(const std::string& label) {
        Bytes b;
        put_cstring(b, label);
        return tag(43, b);
    }

    SwfBuilder& define_shape(std::uint16_t id, const swfpub::Rect& bounds, std::uint16_t code = 2) {
        Bytes b;
        put_u16(b, id);
        append(b, serialize_rect(bounds));
        // empty fill/line style arrays and a bare end-of-shape record
        b.push_back(0);
        b.push_back(0);
        b.push_back(0x00);
        b.push_back(0x00);
        return tag(code, b);
    }

    SwfBuilder& define_button(std::uint16_t id, const std::vector<ButtonRecordSpec>& records,
                              const Bytes& actions) {
        Bytes b;
        put_u16(b, id);
        for (const auto& r : records) {
            b.push_back(r.flags);
            put_u16(b, r.character_id);
            put_u16(b, r.depth);
            append(b, serialize_matrix(r.matrix));
        }
        b.push_back(0);
        append(b, actions);
        return tag(7, b);
    }

    SwfBuilder& do_action(const Bytes& actions) { return tag(12, actions); }

    /// DefineEditText with a font, a color and the given initial text.
    SwfBuilder& edit_text(std::uint16_t id, const std::string& variable,
                          const std::string* initial, bool with_layout = false) {
        Bytes b;
        put_u16(b, id);
        append(b, serialize_rect({0, 2000, 0, 400}));
        std::uint8_t f1 = 0x01 | 0x04; // HasFont, HasTextColor
        if (initial) {
            f1 |= 0x80;
        }
        std::uint8_t f2 = with_layout ? 0x20 : 0x00;
        b.push_back(f1);
        b.push_back(f2);
        put_u16(b, 1);   // font id
        put_u16(b, 240); // height
        b.insert(b.end(), {0, 0, 0, 255});
        if (with_layout) {
            b.insert(b.end(), {0, 0, 0, 0, 0, 0, 0, 0, 0});
        }
        put_cstring(b, variable);
        if (initial) {
            put_cstring(b, *initial);
        }
        return tag(37, b);
    }

    Bytes body() const {
        BitWriter w;
        put_rect(w, stage_);
        Bytes b = w.bytes();
        put_u16(b, rate_);
        put_u16(b, count_);
        append(b, tags_);
        put_u16(b, 0); // End
        return b;
    }

    Bytes fws() const {
        const Bytes b = body();
        Bytes out{'F', 'W', 'S', version_};
        put_u32(out, static_cast<std::uint32_t>(8 + b.size()));
        append(out, b);
        return out;
    }

    Bytes cws() const {
        const Bytes b = body();
        uLongf len = compressBound(static_cast<uLong>(b.size()));
        Bytes z(len);
        compress2(z.data(), &len, b.data(), static_cast<uLong>(b.size()), 9);
        z.resize(len);
        Bytes out{'C', 'W', 'S', version_};
        put_u32(out, static_cast<std::uint32_t>(8 + b.size()));
        append(out, z);
        return out;
    }

private:
    std::uint8_t version_;
    swfpub::Rect stage_;
    std::uint16_t rate_;
    std::uint16_t count_;
    Bytes tags_;
};

/// Stage 550x400 at 12 fps.
inline SwfBuilder stage_550x400(std::uint16_t frames = 1, std::uint8_t version = 5) {
    return SwfBuilder(version, {0, 11000, 0, 8000}, 0x0C00, frames);
}

/// One shape with bounds (2600,4280,2320,3640) twips and a button hit-testing
/// it with GetURL("http://www.macromedia.com").
inline Bytes image_map_fixture() {
    auto b = stage_550x400();
    b.define_shape(1, {2600, 4280, 2320, 3640});
    Bytes actions = action_get_url("http://www.macromedia.com", "");
    append(actions, action_end());
    b.define_button(2, {{0x0F, 1, 1, {}}}, actions);
    b.show_frame();
    return b.fws();
}

} // namespace swftest
