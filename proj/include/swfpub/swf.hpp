#pragma once

#include "swfpub/bit_reader.hpp"
#include "swfpub/geometry.hpp"

#include <zlib.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace swfpub {

enum class Signature { Uncompressed, Compressed };

struct SwfHeader {
    Signature signature = Signature::Uncompressed;
    std::uint8_t version = 0;
    std::uint32_t declared_file_length = 0;
    Rect frame_size;
    std::uint16_t frame_rate = 0; // unsigned 8.8 fixed point
    std::uint16_t frame_count = 0;

    double frames_per_second() const noexcept { return frame_rate / 256.0; }
};

namespace tag {
inline constexpr std::uint16_t End = 0;
inline constexpr std::uint16_t ShowFrame = 1;
inline constexpr std::uint16_t DefineShape = 2;
inline constexpr std::uint16_t DefineButton = 7;
inline constexpr std::uint16_t SetBackgroundColor = 9;
inline constexpr std::uint16_t DoAction = 12;
inline constexpr std::uint16_t DefineShape2 = 22;
inline constexpr std::uint16_t DefineShape3 = 32;
inline constexpr std::uint16_t DefineEditText = 37;
inline constexpr std::uint16_t FrameLabel = 43;
} // namespace tag

struct TagRecord {
    std::uint16_t code = 0;
    std::vector<std::uint8_t> body;
};

struct ParsedMovie {
    SwfHeader header;
    std::vector<TagRecord> tags; // always ends with End
    bool length_mismatch = false;
    std::size_t actual_file_length = 0;
};

namespace detail {

// Upper bound on the inflated body, guards against decompression bombs.
inline constexpr std::size_t kMaxInflatedBytes = std::size_t{256} << 20;

inline std::vector<std::uint8_t> inflate_body(std::span<const std::uint8_t> in,
                                              std::size_t size_hint) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) {
        throw SwfError(SwfErrorKind::DecompressFailed, "zlib initialisation failed");
    }
    std::vector<std::uint8_t> out;
    out.reserve(std::min(size_hint, std::size_t{16} << 20));
    std::uint8_t chunk[16384];
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = chunk;
        zs.avail_out = sizeof chunk;
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            const std::string msg = zs.msg ? zs.msg : "stream ended early";
            inflateEnd(&zs);
            throw SwfError(SwfErrorKind::DecompressFailed, msg);
        }
        out.insert(out.end(), chunk, chunk + (sizeof chunk - zs.avail_out));
        if (out.size() > kMaxInflatedBytes) {
            inflateEnd(&zs);
            throw SwfError(SwfErrorKind::DecompressFailed, "inflated body exceeds size limit");
        }
        if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
            inflateEnd(&zs);
            throw SwfError(SwfErrorKind::DecompressFailed, "compressed body is truncated");
        }
    }
    inflateEnd(&zs);
    return out;
}

} // namespace detail

/// Decodes the container: header fields and the raw tag list through End.
/// CWS bodies are inflated first. A declared length that disagrees with the
/// real one sets length_mismatch instead of failing.
inline ParsedMovie parse_swf(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 3) {
        throw SwfError(SwfErrorKind::Truncated, "file shorter than its signature");
    }
    ParsedMovie movie;
    if (bytes[1] != 'W' || bytes[2] != 'S' || (bytes[0] != 'F' && bytes[0] != 'C')) {
        throw SwfError(SwfErrorKind::BadSignature, "expected FWS or CWS");
    }
    if (bytes.size() < 8) {
        throw SwfError(SwfErrorKind::Truncated, "file shorter than the fixed header");
    }
    auto& hdr = movie.header;
    hdr.signature = bytes[0] == 'C' ? Signature::Compressed : Signature::Uncompressed;
    hdr.version = bytes[3];
    BitReader fixed(bytes.subspan(4, 4));
    hdr.declared_file_length = fixed.read_u32();

    std::vector<std::uint8_t> inflated;
    std::span<const std::uint8_t> body = bytes.subspan(8);
    if (hdr.signature == Signature::Compressed) {
        const std::size_t hint =
            hdr.declared_file_length > 8 ? hdr.declared_file_length - 8 : std::size_t{0};
        inflated = detail::inflate_body(body, hint);
        body = inflated;
    }
    movie.actual_file_length = 8 + body.size();
    movie.length_mismatch = movie.actual_file_length != hdr.declared_file_length;

    BitReader in(body);
    hdr.frame_size = read_rect(in);
    hdr.frame_rate = in.read_u16();
    hdr.frame_count = in.read_u16();

    for (;;) {
        const std::uint16_t word = in.read_u16();
        TagRecord rec;
        rec.code = static_cast<std::uint16_t>(word >> 6);
        std::uint32_t length = word & 0x3Fu;
        if (length == 0x3F) {
            length = in.read_u32();
        }
        if (length > in.remaining()) {
            throw SwfError(SwfErrorKind::Truncated,
                           "tag " + std::to_string(rec.code) + " declares " +
                               std::to_string(length) + " bytes, " +
                               std::to_string(in.remaining()) + " left");
        }
        const auto data = in.read_bytes(length);
        rec.body.assign(data.begin(), data.end());
        const bool end = rec.code == tag::End;
        movie.tags.push_back(std::move(rec));
        if (end) {
            break;
        }
    }
    return movie;
}

} // namespace swfpub
