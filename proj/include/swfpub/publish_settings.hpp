#pragma once

#include "swfpub/movie.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swfpub {

enum class DimensionKind { MatchMovie, Pixels, Percent };

struct Dimensions {
    DimensionKind kind = DimensionKind::MatchMovie;
    std::uint32_t width = 0;
    std::uint32_t height = 0;

    static Dimensions match_movie() { return {}; }
    static Dimensions pixels(std::uint32_t w, std::uint32_t h) { return {DimensionKind::Pixels, w, h}; }
    static Dimensions percent(std::uint32_t w, std::uint32_t h) { return {DimensionKind::Percent, w, h}; }

    friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

enum class Quality { Low, AutoLow, AutoHigh, High, Best };
enum class Scale { ShowAll, NoBorder, ExactFit };
enum class Align { L, R, T, B };
enum class SAlign { L, R, T, B, TL, TR, BL, BR };
enum class WMode { Window, Opaque, Transparent };
enum class ImageFormat { GIF, JPEG, PNG };

inline constexpr std::string_view kClassId = "clsid:D27CDB6E-AE6D-11cf-96B8-444553540000";
inline constexpr std::string_view kDefaultCodebase =
    "http://active.macromedia.com/flash5/cabs/swflash.cab";
inline constexpr std::string_view kDefaultPluginsPage =
    "http://www.macromedia.com/shockwave/download/index.cgi?P1_Prod_Version=ShockwaveFlash";
inline constexpr std::string_view kFlashMimeType = "application/x-shockwave-flash";

/// The OBJECT/EMBED knobs. Defaults are the "implicit" values: a parameter
/// is only written to the markup when it differs from them.
struct PublishSettings {
    Dimensions dimensions;
    bool play = true;
    bool loop = true;
    Quality quality = Quality::High;
    std::optional<Rgb> bgcolor_override;
    Scale scale = Scale::ShowAll;
    std::optional<Align> align;
    std::optional<SAlign> salign;
    WMode wmode = WMode::Window;
    bool menu = true;
    bool devicefont = false;
    std::optional<std::string> base;
    std::optional<bool> swliveconnect;
    std::optional<std::string> title;
    std::string player_version = "5,0,0,0";
    std::string codebase_url{kDefaultCodebase};
    std::string pluginspage_url{kDefaultPluginsPage};
    std::optional<std::string> alt_image;
    ImageFormat image_format = ImageFormat::GIF;

    friend bool operator==(const PublishSettings&, const PublishSettings&) = default;
};

class SettingsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void validate(const PublishSettings& s) {
    const auto& d = s.dimensions;
    if (d.kind == DimensionKind::Percent &&
        (d.width < 1 || d.width > 100 || d.height < 1 || d.height > 100)) {
        throw SettingsError("percent dimensions must be within 1..100");
    }
    if (d.kind == DimensionKind::Pixels && (d.width < 1 || d.height < 1)) {
        throw SettingsError("pixel dimensions must be at least 1");
    }
}

inline std::string_view to_string(Quality q) {
    switch (q) {
    case Quality::Low: return "low";
    case Quality::AutoLow: return "autolow";
    case Quality::AutoHigh: return "autohigh";
    case Quality::High: return "high";
    case Quality::Best: return "best";
    }
    return "high";
}

inline std::string_view to_string(Scale s) {
    switch (s) {
    case Scale::ShowAll: return "showall";
    case Scale::NoBorder: return "noborder";
    case Scale::ExactFit: return "exactfit";
    }
    return "showall";
}

inline std::string_view to_string(Align a) {
    switch (a) {
    case Align::L: return "L";
    case Align::R: return "R";
    case Align::T: return "T";
    case Align::B: return "B";
    }
    return "L";
}

inline std::string_view to_string(SAlign a) {
    switch (a) {
    case SAlign::L: return "L";
    case SAlign::R: return "R";
    case SAlign::T: return "T";
    case SAlign::B: return "B";
    case SAlign::TL: return "TL";
    case SAlign::TR: return "TR";
    case SAlign::BL: return "BL";
    case SAlign::BR: return "BR";
    }
    return "L";
}

inline std::string_view to_string(WMode w) {
    switch (w) {
    case WMode::Window: return "Window";
    case WMode::Opaque: return "Opaque";
    case WMode::Transparent: return "Transparent";
    }
    return "Window";
}

inline std::string_view to_string(ImageFormat f) {
    switch (f) {
    case ImageFormat::GIF: return "GIF";
    case ImageFormat::JPEG: return "JPEG";
    case ImageFormat::PNG: return "PNG";
    }
    return "GIF";
}

inline std::string_view to_string(bool b) { return b ? "true" : "false"; }

} // namespace swfpub
