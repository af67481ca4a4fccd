#include "support/cli_fixture.hpp"
#include "support/stub_server.hpp"
#include "support/swf_builder.hpp"

#include <gtest/gtest.h>

using namespace swftest;

namespace {

struct MovieDir {
    TempDir dir;
    std::string swf = (dir / "mymovie.swf").string();
    std::string gif = (dir / "mymovie.gif").string();

    MovieDir() {
        write_file(swf, image_map_fixture());
        write_file(gif, gif_header(550, 400));
    }
};

} // namespace

TEST(Cli, PublishWithImageWritesMap) {
    MovieDir m;
    const auto r = run({"publish", m.swf, "--image", m.gif});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string html = slurp(m.dir / "mymovie.html");
    EXPECT_NE(html.find("<MAP NAME=\"mymovie\">\n"
                        "<AREA COORDS=\"130,116,214,182\" HREF=\"http://www.macromedia.com\">\n"
                        "</MAP>"),
              std::string::npos);
    EXPECT_NE(html.find("<IMG SRC=\"mymovie.gif\" usemap=\"#mymovie\" WIDTH=550 HEIGHT=400"),
              std::string::npos);
}

TEST(Cli, PublishDefaultTemplateAndOutputPath) {
    MovieDir m;
    const auto out = (m.dir / "page.html").string();
    const auto r = run({"publish", m.swf, "-o", out, "--quality", "best", "--title", "Demo"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string html = slurp(out);
    EXPECT_NE(html.find("<TITLE>Demo</TITLE>"), std::string::npos);
    EXPECT_NE(html.find("<PARAM NAME=\"QUALITY\" VALUE=\"best\">"), std::string::npos);
    EXPECT_NE(html.find("classid=\"clsid:D27CDB6E-AE6D-11cf-96B8-444553540000\""), std::string::npos);
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, PublishCustomTemplateFile) {
    MovieDir m;
    const auto tpl = (m.dir / "t.html").string();
    write_file(tpl, std::string("$TTMine\n<P>$MO $WI</P>\n"));
    const auto r = run({"publish", m.swf, "--template", tpl});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(m.dir / "mymovie.html"), "<P>mymovie.swf 550</P>\n");
}

TEST(Cli, StrictExitsOneOnWarnings) {
    MovieDir m;
    const auto tpl = (m.dir / "t.html").string();
    write_file(tpl, std::string("<OBJECT><PARAM NAME=\"LOOP\" VALUE=\"true\"><EMBED LOOP=\"false\"></OBJECT>"));
    EXPECT_EQ(run({"publish", m.swf, "--template", tpl}).code, 0);
    const auto r = run({"publish", m.swf, "--template", tpl, "--strict"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("LOOP"), std::string::npos);
}

TEST(Cli, SettingsFileAndFlagPrecedence) {
    MovieDir m;
    const auto settings = (m.dir / "s.txt").string();
    write_file(settings, std::string("loop = false\nwmode = Opaque\n"));
    const auto r = run({"embed", m.swf, "--settings", settings, "--loop", "true"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find("NAME=\"LOOP\""), std::string::npos);
    EXPECT_NE(r.out.find("<PARAM NAME=\"WMODE\" VALUE=\"Opaque\">"), std::string::npos);
}

TEST(Cli, Inspect) {
    MovieDir m;
    const auto r = run({"inspect", m.swf});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("width: 550\n"), std::string::npos);
    EXPECT_NE(r.out.find("height: 400\n"), std::string::npos);
    EXPECT_NE(r.out.find("compressed: no\n"), std::string::npos);
    EXPECT_NE(r.out.find("hotspot: button=2 frame=0 twips=2600,2320,4280,3640 http://www.macromedia.com"),
              std::string::npos);
}

TEST(Cli, Reports) {
    MovieDir m;
    auto r = run({"report", m.swf, "--urls"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "<!-- URL: http://www.macromedia.com -->\n");
    r = run({"report", m.swf, "--text"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
    EXPECT_EQ(run({"report", m.swf}).code, 2);
    EXPECT_EQ(run({"report", m.swf, "--text", "--urls"}).code, 2);
}

TEST(Cli, ImageMapCommand) {
    MovieDir m;
    const auto r = run({"imagemap", m.swf, "--image", m.gif});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "<MAP NAME=\"mymovie\">\n"
                     "<AREA COORDS=\"130,116,214,182\" HREF=\"http://www.macromedia.com\">\n"
                     "</MAP>\n");
}

TEST(Cli, Templates) {
    const auto r = run({"templates"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("default: Flash Only (Default)\n"), std::string::npos);
    EXPECT_NE(r.out.find("    Use an OBJECT and EMBED\n    tag to display Flash.\n"), std::string::npos);
}

TEST(Cli, ServerConfig) {
    auto r = run({"server-config", "--flavor", "apache"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("AddType application/x-shockwave-flash .swf"), std::string::npos);
    EXPECT_EQ(run({"server-config", "--flavor", "iis"}).code, 2);
}

TEST(Cli, CheckServerExitCodes) {
    StubServer server;
    auto r = run({"check-server", server.url("/ok.swf")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("pass ", 0), 0u);
    r = run({"check-server", server.url("/ok.swf"), server.url("/wrong.swf")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("wrong-type " + server.url("/wrong.swf")), std::string::npos);
    EXPECT_EQ(run({"check-server", "ftp://x/a.swf"}).code, 2);
}

TEST(Cli, InvalidInvocations) {
    MovieDir m;
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"publish"}).code, 2);
    EXPECT_EQ(run({"publish", (m.dir / "absent.swf").string()}).code, 2);
    EXPECT_EQ(run({"publish", m.swf, "--quality", "superb"}).code, 2);
    EXPECT_EQ(run({"publish", m.swf, "--dimensions", "0%x10%"}).code, 2);
    EXPECT_EQ(run({"publish", m.swf, "--template", "no-such-template"}).code, 2);
    write_file(m.dir / "junk.swf", std::string("not a movie"));
    const auto r = run({"inspect", (m.dir / "junk.swf").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("BadSignature"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}
