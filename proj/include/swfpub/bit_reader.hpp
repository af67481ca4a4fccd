#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace swfpub {

/// Failure categories raised while decoding SWF data.
enum class SwfErrorKind {
    BadSignature,
    Truncated,
    DecompressFailed,
    MalformedTag,
};

inline const char* to_string(SwfErrorKind kind) {
    switch (kind) {
    case SwfErrorKind::BadSignature: return "BadSignature";
    case SwfErrorKind::Truncated: return "Truncated";
    case SwfErrorKind::DecompressFailed: return "DecompressFailed";
    case SwfErrorKind::MalformedTag: return "MalformedTag";
    }
    return "Unknown";
}

class SwfError : public std::runtime_error {
public:
    SwfError(SwfErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    SwfErrorKind kind() const noexcept { return kind_; }

private:
    SwfErrorKind kind_;
};

/// Cursor over a byte span that reads SWF fields: little-endian integers,
/// NUL-terminated strings and MSB-first bit fields. Byte reads always start
/// on a byte boundary; any pending bit position is discarded first.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    bool at_end() const noexcept { return pos_ >= data_.size() && bit_ == 0; }

    std::uint32_t read_ubits(unsigned count) {
        std::uint32_t value = 0;
        for (unsigned i = 0; i < count; ++i) {
            if (pos_ >= data_.size()) {
                fail("bit field runs past end of data");
            }
            const unsigned bit = (data_[pos_] >> (7 - bit_)) & 1u;
            value = (value << 1) | bit;
            if (++bit_ == 8) {
                bit_ = 0;
                ++pos_;
            }
        }
        return value;
    }

    std::int32_t read_sbits(unsigned count) {
        if (count == 0) {
            return 0;
        }
        const std::uint32_t raw = read_ubits(count);
        if (count < 32 && (raw & (1u << (count - 1)))) {
            return static_cast<std::int32_t>(raw | (~0u << count));
        }
        return static_cast<std::int32_t>(raw);
    }

    bool read_flag() { return read_ubits(1) != 0; }

    void align() noexcept {
        if (bit_ != 0) {
            bit_ = 0;
            ++pos_;
        }
    }

    std::uint8_t read_u8() {
        align();
        need(1);
        return data_[pos_++];
    }

    std::uint16_t read_u16() {
        align();
        need(2);
        const auto v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint32_t read_u32() {
        align();
        need(4);
        const std::uint32_t v = std::uint32_t{data_[pos_]} | (std::uint32_t{data_[pos_ + 1]} << 8) |
                                (std::uint32_t{data_[pos_ + 2]} << 16) |
                                (std::uint32_t{data_[pos_ + 3]} << 24);
        pos_ += 4;
        return v;
    }

    std::span<const std::uint8_t> read_bytes(std::size_t count) {
        align();
        need(count);
        auto out = data_.subspan(pos_, count);
        pos_ += count;
        return out;
    }

    void skip(std::size_t count) { read_bytes(count); }

    /// Raw bytes of a NUL-terminated string, terminator consumed but not returned.
    std::span<const std::uint8_t> read_cstring() {
        align();
        const std::size_t start = pos_;
        while (pos_ < data_.size() && data_[pos_] != 0) {
            ++pos_;
        }
        if (pos_ >= data_.size()) {
            pos_ = start;
            fail("string is missing its NUL terminator");
        }
        auto out = data_.subspan(start, pos_ - start);
        ++pos_;
        return out;
    }

    /// Readers used on tag bodies report MalformedTag instead of Truncated.
    void set_error_kind(SwfErrorKind kind) noexcept { error_kind_ = kind; }

private:
    void need(std::size_t count) const {
        if (remaining() < count) {
            fail("needed " + std::to_string(count) + " bytes, " + std::to_string(remaining()) +
                 " left");
        }
    }

    [[noreturn]] void fail(const std::string& what) const { throw SwfError(error_kind_, what); }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
    unsigned bit_ = 0;
    SwfErrorKind error_kind_ = SwfErrorKind::Truncated;
};

} // namespace swfpub
