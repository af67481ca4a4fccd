#pragma once

#include "swfpub/image_probe.hpp"
#include "swfpub/movie.hpp"
#include "swfpub/publish_settings.hpp"
#include "swfpub/tag_check.hpp"
#include "swfpub/template.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace swfpub {

struct EmittedDocument {
    std::string html;
    std::vector<std::string> warnings;
};

/// Expansions for $IM, $IS, $IU, $IW and $IH.
struct ImageMap {
    std::string im;
    std::string is;
    std::string iu;
    std::string iw;
    std::string ih;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string quote_attr(std::string_view v) {
    std::string out = "\"";
    for (const char c : v) {
        if (c == '"') {
            out += "&quot;";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

inline std::string hex_color(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", c.r, c.g, c.b);
    return buf;
}

// Commented values keep "--" out of the comment body.
inline std::string comment_safe(std::string_view v) {
    std::string out;
    for (const char c : v) {
        if (c == '-' && !out.empty() && out.back() == '-') {
            out += ' ';
        }
        out += c;
    }
    return out;
}

inline std::string dimension(const Dimensions& d, std::uint32_t movie_px, bool width) {
    const std::uint32_t n = width ? d.width : d.height;
    switch (d.kind) {
    case DimensionKind::MatchMovie: return std::to_string(movie_px);
    case DimensionKind::Pixels: return std::to_string(n);
    case DimensionKind::Percent: return std::to_string(n) + "%";
    }
    return std::to_string(movie_px);
}

inline std::string file_name_of(std::string_view path) {
    const auto slash = path.find_last_of("/\\");
    return std::string(slash == std::string_view::npos ? path : path.substr(slash + 1));
}

/// Name/value pairs shared by the OBJECT PARAMs and EMBED attributes, in
/// emission order, with implicit (default) values left out. QUALITY is
/// always present.
inline std::vector<std::pair<std::string, std::string>> explicit_parameters(
    const PublishSettings& s) {
    std::vector<std::pair<std::string, std::string>> p;
    if (!s.play) {
        p.emplace_back("PLAY", to_string(s.play));
    }
    if (!s.loop) {
        p.emplace_back("LOOP", to_string(s.loop));
    }
    p.emplace_back("QUALITY", to_string(s.quality));
    if (s.scale != Scale::ShowAll) {
        p.emplace_back("SCALE", to_string(s.scale));
    }
    if (s.salign) {
        p.emplace_back("SALIGN", to_string(*s.salign));
    }
    if (s.wmode != WMode::Window) {
        p.emplace_back("WMODE", to_string(s.wmode));
    }
    if (s.devicefont) {
        p.emplace_back("DEVICEFONT", to_string(s.devicefont));
    }
    if (s.bgcolor_override) {
        p.emplace_back("BGCOLOR", hex_color(*s.bgcolor_override));
    }
    if (!s.menu) {
        p.emplace_back("MENU", to_string(s.menu));
    }
    if (s.base) {
        p.emplace_back("BASE", *s.base);
    }
    return p;
}

} // namespace detail

inline std::string emit_object_params(const PublishSettings& s, const MovieSummary& movie) {
    std::string out = "<PARAM NAME=\"MOVIE\" VALUE=" + detail::quote_attr(movie.movie_file()) + ">";
    for (const auto& [name, value] : detail::explicit_parameters(s)) {
        out += "\n<PARAM NAME=\"" + name + "\" VALUE=" + detail::quote_attr(value) + ">";
    }
    return out;
}

inline std::string emit_embed_attrs(const PublishSettings& s, const MovieSummary& movie) {
    std::string out = "SRC=" + detail::quote_attr(movie.movie_file());
    for (const auto& [name, value] : detail::explicit_parameters(s)) {
        out += " " + name + "=" + detail::quote_attr(value);
    }
    if (s.swliveconnect) {
        out += " SWLIVECONNECT=" + detail::quote_attr(to_string(*s.swliveconnect));
    }
    return out;
}

/// Client-side image map over `image_file`. Coordinates are stage pixels,
/// clamped to the stage.
inline ImageMap generate_image_map(const MovieSummary& movie, std::string_view image_file,
                                   std::uint32_t image_w_px, std::uint32_t image_h_px) {
    ImageMap map;
    if (movie.hotspots.empty()) {
        map.warnings.push_back("image map requested but the movie has no GetURL buttons");
        return map;
    }
    const auto clamp_px = [](std::int64_t twips, std::uint32_t limit) {
        return std::clamp<std::int64_t>(twips_to_pixels(twips), 0, limit);
    };
    map.im = "<MAP NAME=" + detail::quote_attr(movie.movie_stem) + ">\n";
    for (const auto& h : movie.hotspots) {
        const Rect b = h.bounds_twips.normalized();
        map.im += "<AREA COORDS=\"" + std::to_string(clamp_px(b.x_min, movie.width_px)) + "," +
                  std::to_string(clamp_px(b.y_min, movie.height_px)) + "," +
                  std::to_string(clamp_px(b.x_max, movie.width_px)) + "," +
                  std::to_string(clamp_px(b.y_max, movie.height_px)) +
                  "\" HREF=" + detail::quote_attr(h.url);
        if (!h.target.empty()) {
            map.im += " TARGET=" + detail::quote_attr(h.target);
        }
        map.im += ">\n";
    }
    map.im += "</MAP>";
    map.is = detail::quote_attr(image_file);
    map.iu = detail::quote_attr("#" + movie.movie_stem);
    map.iw = std::to_string(image_w_px);
    map.ih = std::to_string(image_h_px);
    return map;
}

inline std::string generate_text_report(const MovieSummary& movie) {
    std::string out;
    for (const auto& text : movie.texts) {
        if (!out.empty()) {
            out += '\n';
        }
        out += "<!-- TEXT: " + detail::comment_safe(text) + " -->";
    }
    return out;
}

/// One comment per distinct (url, target), in first-seen order.
inline std::string generate_url_report(const MovieSummary& movie) {
    std::string out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& a : movie.url_actions) {
        if (!seen.emplace(a.url, a.target).second) {
            continue;
        }
        if (!out.empty()) {
            out += '\n';
        }
        out += "<!-- URL: " + detail::comment_safe(a.url);
        if (!a.target.empty()) {
            out += " TARGET: " + detail::comment_safe(a.target);
        }
        out += " -->";
    }
    return out;
}

/// Maps every body variable to its expansion for this movie and settings.
/// `image` supplies the alternate image's pixel size; the stage size is used
/// when it is absent. Image-map warnings are appended to `warnings`.
inline SubstitutionContext build_context(const MovieSummary& movie, const PublishSettings& s,
                                         std::optional<ImageInfo> image = std::nullopt,
                                         std::vector<std::string>* warnings = nullptr) {
    validate(s);
    using V = VariableCode;
    SubstitutionContext ctx;
    ctx[V::MO] = movie.movie_file();
    ctx[V::TI] = s.title.value_or(movie.movie_stem);
    ctx[V::WI] = detail::dimension(s.dimensions, movie.width_px, true);
    ctx[V::HE] = detail::dimension(s.dimensions, movie.height_px, false);
    ctx[V::BG] = detail::hex_color(s.bgcolor_override.value_or(movie.background_color));
    ctx[V::QU] = to_string(s.quality);
    ctx[V::SC] = to_string(s.scale);
    ctx[V::SA] = s.salign ? std::string(to_string(*s.salign)) : std::string();
    ctx[V::HA] = s.align ? std::string(to_string(*s.align)) : std::string();
    ctx[V::WM] = to_string(s.wmode);
    ctx[V::ME] = to_string(s.menu);
    ctx[V::DE] = to_string(s.devicefont);
    ctx[V::PL] = to_string(s.play);
    ctx[V::LO] = to_string(s.loop);
    ctx[V::PO] = emit_object_params(s, movie);
    ctx[V::PE] = emit_embed_attrs(s, movie);
    ctx[V::MT] = generate_text_report(movie);
    ctx[V::MU] = generate_url_report(movie);

    ImageMap map;
    if (s.alt_image) {
        const std::uint32_t w = image ? image->width_px : movie.width_px;
        const std::uint32_t h = image ? image->height_px : movie.height_px;
        map = generate_image_map(movie, detail::file_name_of(*s.alt_image), w, h);
        if (warnings) {
            warnings->insert(warnings->end(), map.warnings.begin(), map.warnings.end());
        }
    }
    ctx[V::IM] = std::move(map.im);
    ctx[V::IS] = std::move(map.is);
    ctx[V::IU] = std::move(map.iu);
    ctx[V::IW] = std::move(map.iw);
    ctx[V::IH] = std::move(map.ih);
    return ctx;
}

/// Renders `t` for the movie and checks the resulting OBJECT/EMBED pair.
inline EmittedDocument publish_html(const MovieSummary& movie, const PublishSettings& s,
                                    const Template& t,
                                    std::optional<ImageInfo> image = std::nullopt) {
    EmittedDocument doc;
    const auto ctx = build_context(movie, s, image, &doc.warnings);
    doc.html = render(t, ctx);
    for (auto& w : verify_tag_consistency(doc.html)) {
        doc.warnings.push_back(std::move(w));
    }
    return doc;
}

/// Stand-alone OBJECT element with the EMBED nested before its close, for
/// pasting into hand-written pages.
inline std::string emit_object_element(const MovieSummary& movie, const PublishSettings& s) {
    validate(s);
    const std::string w = detail::dimension(s.dimensions, movie.width_px, true);
    const std::string h = detail::dimension(s.dimensions, movie.height_px, false);
    const std::string align =
        s.align ? " ALIGN=" + detail::quote_attr(to_string(*s.align)) : std::string();
    std::string out = "<OBJECT CLASSID=" + detail::quote_attr(kClassId) +
                      " WIDTH=" + detail::quote_attr(w) + " HEIGHT=" + detail::quote_attr(h) +
                      " CODEBASE=" + detail::quote_attr(s.codebase_url + "#version=" + s.player_version) +
                      align + ">\n";
    out += emit_object_params(s, movie) + "\n";
    out += "<EMBED " + emit_embed_attrs(s, movie) + " WIDTH=" + detail::quote_attr(w) +
           " HEIGHT=" + detail::quote_attr(h) + align +
           " TYPE=" + detail::quote_attr(kFlashMimeType) +
           " PLUGINSPAGE=" + detail::quote_attr(s.pluginspage_url) + ">\n";
    out += "</EMBED>\n</OBJECT>";
    return out;
}

} // namespace swfpub
