#pragma once

#include "swfpub/publish_settings.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace swfpub {

enum class ImageErrorKind { UnknownFormat, Truncated };

class ImageError : public std::runtime_error {
public:
    ImageError(ImageErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind == ImageErrorKind::UnknownFormat ? "UnknownFormat"
                                                                                : "Truncated") +
                             ": " + what),
          kind_(kind) {}

    ImageErrorKind kind() const noexcept { return kind_; }

private:
    ImageErrorKind kind_;
};

struct ImageInfo {
    ImageFormat format = ImageFormat::GIF;
    std::uint32_t width_px = 0;
    std::uint32_t height_px = 0;

    friend bool operator==(const ImageInfo&, const ImageInfo&) = default;
};

namespace detail {

inline std::uint32_t be16(std::span<const std::uint8_t> b, std::size_t at) {
    return (std::uint32_t{b[at]} << 8) | b[at + 1];
}

inline std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t at) {
    return (be16(b, at) << 16) | be16(b, at + 2);
}

inline ImageInfo probe_jpeg(std::span<const std::uint8_t> b) {
    std::size_t pos = 2;
    auto truncated = [] { return ImageError(ImageErrorKind::Truncated, "JPEG ends before a frame header"); };
    for (;;) {
        if (pos >= b.size()) {
            throw truncated();
        }
        if (b[pos] != 0xFF) {
            throw ImageError(ImageErrorKind::UnknownFormat, "JPEG marker expected");
        }
        while (pos < b.size() && b[pos] == 0xFF) {
            ++pos; // fill bytes
        }
        if (pos >= b.size()) {
            throw truncated();
        }
        const std::uint8_t marker = b[pos++];
        if (marker == 0x01 || (marker >= 0xD0 && marker <= 0xD8)) {
            continue; // standalone, no length
        }
        if (marker == 0xD9 || marker == 0xDA) {
            throw ImageError(ImageErrorKind::UnknownFormat, "JPEG has no SOF0/SOF2 before scan data");
        }
        if (pos + 2 > b.size()) {
            throw truncated();
        }
        const std::uint32_t length = be16(b, pos);
        if (length < 2) {
            throw ImageError(ImageErrorKind::UnknownFormat, "JPEG segment length below 2");
        }
        if (marker == 0xC0 || marker == 0xC2) {
            if (pos + 7 > b.size()) {
                throw truncated();
            }
            return {ImageFormat::JPEG, be16(b, pos + 5), be16(b, pos + 3)};
        }
        pos += length;
    }
}

} // namespace detail

/// Pixel size from the header of a GIF, PNG or JPEG file.
inline ImageInfo probe_image_dimensions(std::span<const std::uint8_t> b) {
    auto starts = [&](std::initializer_list<std::uint8_t> sig) {
        return b.size() >= sig.size() && std::equal(sig.begin(), sig.end(), b.begin());
    };
    if (starts({'G', 'I', 'F', '8', '7', 'a'}) || starts({'G', 'I', 'F', '8', '9', 'a'})) {
        if (b.size() < 10) {
            throw ImageError(ImageErrorKind::Truncated, "GIF logical screen descriptor is incomplete");
        }
        return {ImageFormat::GIF, b[6] | (std::uint32_t{b[7]} << 8), b[8] | (std::uint32_t{b[9]} << 8)};
    }
    if (starts({0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'})) {
        if (b.size() < 24) {
            throw ImageError(ImageErrorKind::Truncated, "PNG IHDR chunk is incomplete");
        }
        if (!(b[12] == 'I' && b[13] == 'H' && b[14] == 'D' && b[15] == 'R')) {
            throw ImageError(ImageErrorKind::UnknownFormat, "PNG does not start with IHDR");
        }
        return {ImageFormat::PNG, detail::be32(b, 16), detail::be32(b, 20)};
    }
    if (starts({0xFF, 0xD8})) {
        return detail::probe_jpeg(b);
    }
    throw ImageError(ImageErrorKind::UnknownFormat, "not a GIF, PNG or JPEG file");
}

} // namespace swfpub
