#pragma once

#include "swfpub/bit_reader.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>

namespace swfpub {

inline constexpr std::int32_t kTwipsPerPixel = 20;
inline constexpr std::int32_t kFixedOne = 0x10000; // 1.0 in 16.16

/// Axis-aligned rectangle in twips.
struct Rect {
    std::int32_t x_min = 0;
    std::int32_t x_max = 0;
    std::int32_t y_min = 0;
    std::int32_t y_max = 0;

    constexpr Rect normalized() const noexcept {
        return {std::min(x_min, x_max), std::max(x_min, x_max), std::min(y_min, y_max),
                std::max(y_min, y_max)};
    }

    constexpr std::int64_t width_twips() const noexcept {
        return std::int64_t{x_max} - x_min;
    }
    constexpr std::int64_t height_twips() const noexcept {
        return std::int64_t{y_max} - y_min;
    }

    constexpr Rect united(const Rect& o) const noexcept {
        return {std::min(x_min, o.x_min), std::max(x_max, o.x_max), std::min(y_min, o.y_min),
                std::max(y_max, o.y_max)};
    }

    friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

/// Twips to whole pixels, rounding halves toward positive infinity.
constexpr std::int64_t twips_to_pixels(std::int64_t twips) noexcept {
    const std::int64_t shifted = twips + kTwipsPerPixel / 2;
    std::int64_t q = shifted / kTwipsPerPixel;
    if (shifted % kTwipsPerPixel != 0 && shifted < 0) {
        --q;
    }
    return q;
}

/// 2x3 affine transform as stored in SWF: scale and rotate/skew terms are
/// raw 16.16 fixed point, translation is in twips.
struct Matrix {
    std::int32_t scale_x = kFixedOne;
    std::int32_t scale_y = kFixedOne;
    std::int32_t rotate_skew_0 = 0;
    std::int32_t rotate_skew_1 = 0;
    std::int32_t translate_x = 0;
    std::int32_t translate_y = 0;

    static constexpr Matrix identity() noexcept { return {}; }

    friend constexpr bool operator==(const Matrix&, const Matrix&) = default;
};

/// RECT record: 5-bit field width, then x_min, x_max, y_min, y_max.
inline Rect read_rect(BitReader& in) {
    in.align();
    const unsigned nbits = in.read_ubits(5);
    Rect r;
    r.x_min = in.read_sbits(nbits);
    r.x_max = in.read_sbits(nbits);
    r.y_min = in.read_sbits(nbits);
    r.y_max = in.read_sbits(nbits);
    in.align();
    return r;
}

inline Matrix read_matrix(BitReader& in) {
    in.align();
    Matrix m;
    if (in.read_flag()) {
        const unsigned nbits = in.read_ubits(5);
        m.scale_x = in.read_sbits(nbits);
        m.scale_y = in.read_sbits(nbits);
    }
    if (in.read_flag()) {
        const unsigned nbits = in.read_ubits(5);
        m.rotate_skew_0 = in.read_sbits(nbits);
        m.rotate_skew_1 = in.read_sbits(nbits);
    }
    const unsigned nbits = in.read_ubits(5);
    m.translate_x = in.read_sbits(nbits);
    m.translate_y = in.read_sbits(nbits);
    in.align();
    return m;
}

namespace detail {

// round(num / 65536) with halves rounded up
constexpr std::int64_t round_fixed(std::int64_t num) noexcept {
    const std::int64_t shifted = num + kFixedOne / 2;
    std::int64_t q = shifted / kFixedOne;
    if (shifted % kFixedOne != 0 && shifted < 0) {
        --q;
    }
    return q;
}

constexpr std::int32_t saturate(std::int64_t v) noexcept {
    return static_cast<std::int32_t>(std::clamp<std::int64_t>(
        v, std::numeric_limits<std::int32_t>::min(), std::numeric_limits<std::int32_t>::max()));
}

} // namespace detail

/// Bounding box of the four transformed corners of `r`.
/// x' = scale_x*x + rotate_skew_1*y + tx, y' = rotate_skew_0*x + scale_y*y + ty.
inline Rect transform_bounds(const Matrix& m, const Rect& r) noexcept {
    const std::array<std::int64_t, 2> xs{r.x_min, r.x_max};
    const std::array<std::int64_t, 2> ys{r.y_min, r.y_max};
    std::int64_t lo_x = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi_x = std::numeric_limits<std::int64_t>::min();
    std::int64_t lo_y = lo_x;
    std::int64_t hi_y = hi_x;
    for (const auto x : xs) {
        for (const auto y : ys) {
            const std::int64_t tx =
                detail::round_fixed(m.scale_x * x + m.rotate_skew_1 * y) + m.translate_x;
            const std::int64_t ty =
                detail::round_fixed(m.rotate_skew_0 * x + m.scale_y * y) + m.translate_y;
            lo_x = std::min(lo_x, tx);
            hi_x = std::max(hi_x, tx);
            lo_y = std::min(lo_y, ty);
            hi_y = std::max(hi_y, ty);
        }
    }
    return {detail::saturate(lo_x), detail::saturate(hi_x), detail::saturate(lo_y),
            detail::saturate(hi_y)};
}

} // namespace swfpub
