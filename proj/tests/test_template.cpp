#include "swfpub/builtin_templates.hpp"
#include "swfpub/template.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace swfpub;

namespace {

TemplateError parse_error(std::string_view src) {
    try {
        parse_template(src);
    } catch (const TemplateError& e) {
        return e;
    }
    ADD_FAILURE() << "parsed: " << src;
    return TemplateError(TemplateErrorKind::MissingValue, 0, 0, "");
}

SubstitutionContext identity_context() {
    SubstitutionContext ctx;
    for (std::size_t i = 0; i < kVariableNames.size(); ++i) {
        const auto c = static_cast<VariableCode>(i);
        if (!is_metadata_code(c)) {
            ctx[c] = "$" + std::string(kVariableNames[i]);
        }
    }
    return ctx;
}

std::string unescape(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '$') {
            continue;
        }
        out += s[i];
    }
    return out;
}

} // namespace

TEST(ParseTemplate, DefaultPageMetadata) {
    const auto t = default_template();
    EXPECT_EQ(t.headline, "Flash Only (Default)");
    EXPECT_EQ(t.description, "Use an OBJECT and EMBED\ntag to display Flash.");
    using V = VariableCode;
    EXPECT_EQ(t.variables(), (std::set<V>{V::TI, V::BG, V::MU, V::MT, V::PO, V::PE, V::WI, V::HE}));
    EXPECT_EQ(serialize(t), kDefaultTemplateSource);
}

TEST(ParseTemplate, PlainText) {
    const auto t = parse_template("hello");
    EXPECT_TRUE(t.headline.empty());
    EXPECT_TRUE(t.description.empty());
    ASSERT_EQ(t.body.size(), 1u);
    EXPECT_EQ(t.body[0], Segment::literal("hello"));
}

TEST(ParseTemplate, EscapedDollar) {
    const auto t = parse_template("price: \\$5");
    EXPECT_EQ(render(t, {}), "price: $5");
    EXPECT_EQ(serialize_body(t), "price: \\$5");
}

TEST(ParseTemplate, CrLfLinesPreserved) {
    const std::string src = "$TTTitle\r\n$DS\r\nline one\r\nline two\r\n$DF\r\n<B>$TI</B>\r\n";
    const auto t = parse_template(src);
    EXPECT_EQ(t.headline, "Title");
    EXPECT_EQ(t.description, "line one\r\nline two");
    EXPECT_EQ(serialize_body(t), "<B>$TI</B>\r\n");
    EXPECT_EQ(serialize(t), src);
}

TEST(ParseTemplate, HeadlineWithoutDescription) {
    const auto t = parse_template("$TTJust a headline\n$TI");
    EXPECT_EQ(t.headline, "Just a headline");
    EXPECT_EQ(serialize_body(t), "$TI");
}

TEST(ParseTemplate, UnknownVariableWithPosition) {
    const auto e = parse_error("ok\nxx $ZZ");
    EXPECT_EQ(e.kind(), TemplateErrorKind::UnknownVariable);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
}

TEST(ParseTemplate, LowercaseCodesAreUnknown) {
    EXPECT_EQ(parse_error("$qu").kind(), TemplateErrorKind::UnknownVariable);
}

TEST(ParseTemplate, MetadataCodesInBodyAreUnknown) {
    EXPECT_EQ(parse_error("<P>\n$TTlate").kind(), TemplateErrorKind::UnknownVariable);
    EXPECT_EQ(parse_error("x $DF").kind(), TemplateErrorKind::UnknownVariable);
}

TEST(ParseTemplate, DanglingDollar) {
    EXPECT_EQ(parse_error("cost $").kind(), TemplateErrorKind::DanglingDollar);
    EXPECT_EQ(parse_error("cost $Q").kind(), TemplateErrorKind::DanglingDollar);
}

TEST(ParseTemplate, UnterminatedDescription) {
    const auto e = parse_error("$TTx\n$DS\nno end\n");
    EXPECT_EQ(e.kind(), TemplateErrorKind::UnterminatedDescription);
    EXPECT_EQ(e.line(), 2u);
}

TEST(Render, Substitutes) {
    const auto t = parse_template("WIDTH=$IW HEIGHT=$IH");
    EXPECT_EQ(render(t, {{VariableCode::IW, "550"}, {VariableCode::IH, "400"}}),
              "WIDTH=550 HEIGHT=400");
}

TEST(Render, EmptyTemplate) {
    EXPECT_EQ(render(parse_template(""), {}), "");
}

TEST(Render, SinglePass) {
    EXPECT_EQ(render(parse_template("$MO"), {{VariableCode::MO, "$PL"}}), "$PL");
}

TEST(Render, MissingValueNamesCode) {
    try {
        render(parse_template("a $QU b"), {});
        FAIL();
    } catch (const TemplateError& e) {
        EXPECT_EQ(e.kind(), TemplateErrorKind::MissingValue);
        EXPECT_NE(std::string(e.what()).find("$QU"), std::string::npos);
    }
}

TEST(Render, IdempotentForVariableFreeExpansions) {
    const auto t = parse_template("<P>$TI / $WI x $HE</P>");
    const SubstitutionContext ctx{
        {VariableCode::TI, "movie"}, {VariableCode::WI, "550"}, {VariableCode::HE, "400"}};
    const std::string once = render(t, ctx);
    EXPECT_EQ(render(parse_template(once), ctx), once);
}

TEST(TemplateProperties, RandomSourcesRoundTripOrFailCleanly) {
    std::mt19937 rng(99);
    const std::string alphabet = "ab <>=\"\n\r\\$TIQUPOXZ";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 40);
    const auto ctx = identity_context();
    int parsed = 0;
    for (int i = 0; i < 3000; ++i) {
        std::string src;
        for (int k = len(rng); k > 0; --k) {
            src += alphabet[pick(rng)];
        }
        try {
            const auto t = parse_template(src);
            ++parsed;
            const std::string body = serialize_body(t);
            ASSERT_EQ(t.metadata_source + body, src);
            const std::string out = render(t, ctx);
            ASSERT_EQ(out, unescape(body));
            std::size_t expected = 0;
            for (const auto& s : t.body) {
                expected += s.kind == Segment::Kind::Literal ? s.text.size() : 3;
            }
            ASSERT_EQ(out.size(), expected);
        } catch (const TemplateError& e) {
            ASSERT_NE(e.kind(), TemplateErrorKind::MissingValue);
        }
    }
    EXPECT_GT(parsed, 100);
}

TEST(Builtins, AllParseAndRoundTrip) {
    for (const auto& b : builtin_templates()) {
        const auto t = parse_template(b.source);
        EXPECT_FALSE(t.headline.empty()) << b.name;
        EXPECT_FALSE(t.description.empty()) << b.name;
        EXPECT_EQ(serialize(t), b.source) << b.name;
    }
    EXPECT_FALSE(builtin_template("nope").has_value());
}
