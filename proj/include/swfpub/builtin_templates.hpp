#pragma once

#include "swfpub/template.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace swfpub {

// Stock "Flash Only" page: OBJECT for Internet Explorer with EMBED nested
// for Netscape, plus URL and text reports as comments.
inline constexpr std::string_view kDefaultTemplateSource = R"($TTFlash Only (Default)
$DS
Use an OBJECT and EMBED
tag to display Flash.
$DF
<HTML>
<HEAD>
<TITLE>$TI</TITLE>
</HEAD>
<BODY bgcolor="$BG">
<!-- URLs used in the movie-->
$MU
<!-- text used in the movie-->
$MT
<OBJECT classid="clsid:D27CDB6E-AE6D-11cf-96B8-444553540000"
codebase="http://download.macromedia.com/pub/shockwave/cabs/flash/swflash.cab#version=5,0,0,0"
ID=$TI WIDTH=$WI HEIGHT=$HE>
$PO
<EMBED $PE WIDTH=$WI HEIGHT=$HE
TYPE="application/x-shockwave-flash"
PLUGINSOURCE="http://www.macromedia.com/shockwave/download/index.cgi?Pl_Prod_Version=ShockwaveFlash"></EMBED>
</OBJECT>
</BODY>
</HTML>
)";

inline constexpr std::string_view kImageMapTemplateSource = R"($TTImage Map
$DS
Show the alternate image with an image map
built from the movie's GetURL buttons.
$DF
<HTML>
<HEAD>
<TITLE>$TI</TITLE>
</HEAD>
<BODY bgcolor="$BG">
$IM
<IMG SRC=$IS usemap=$IU WIDTH=$IW HEIGHT=$IH BORDER=0>
</BODY>
</HTML>
)";

namespace detail {

// Every `$` outside the three metadata lines must start a known body code.
constexpr bool body_codes_valid(std::string_view src) {
    std::size_t i = 0;
    for (int skipped = 0; skipped < 5 && i < src.size(); ++skipped) {
        i = src.find('\n', i) + 1;
    }
    constexpr std::string_view body_codes[] = {"TI", "BG", "MU", "MT", "PO", "PE", "WI", "HE",
                                               "MO", "PL", "LO", "QU", "SC", "SA", "HA", "WM",
                                               "ME", "DE", "IM", "IS", "IU", "IW", "IH"};
    for (; i < src.size(); ++i) {
        if (src[i] != '$' || (i > 0 && src[i - 1] == '\\')) {
            continue;
        }
        if (i + 2 >= src.size()) {
            return false;
        }
        bool known = false;
        for (const auto code : body_codes) {
            known = known || src.substr(i + 1, 2) == code;
        }
        if (!known) {
            return false;
        }
    }
    return true;
}

static_assert(body_codes_valid(kDefaultTemplateSource));
static_assert(body_codes_valid(kImageMapTemplateSource));

} // namespace detail

struct BuiltinTemplate {
    std::string_view name;
    std::string_view source;
};

inline constexpr BuiltinTemplate kBuiltinTemplates[] = {
    {"default", kDefaultTemplateSource},
    {"imagemap", kImageMapTemplateSource},
};

inline std::span<const BuiltinTemplate> builtin_templates() { return kBuiltinTemplates; }

inline std::optional<Template> builtin_template(std::string_view name) {
    for (const auto& b : kBuiltinTemplates) {
        if (b.name == name) {
            return parse_template(b.source);
        }
    }
    return std::nullopt;
}

inline Template default_template() { return parse_template(kDefaultTemplateSource); }

} // namespace swfpub
