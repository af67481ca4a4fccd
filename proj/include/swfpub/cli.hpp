#pragma once

#include "swfpub/builtin_templates.hpp"
#include "swfpub/image_probe.hpp"
#include "swfpub/movie.hpp"
#include "swfpub/publisher.hpp"
#include "swfpub/server_check.hpp"
#include "swfpub/settings_file.hpp"
#include "swfpub/swf.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace swfpub {

namespace exit_code {
inline constexpr int Ok = 0;
inline constexpr int Warnings = 1;
inline constexpr int Invalid = 2;
inline constexpr int ServerCheckFailed = 3;
} // namespace exit_code

namespace cli_detail {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + p.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string read_text(const std::filesystem::path& p) {
    const auto bytes = read_file(p);
    return {bytes.begin(), bytes.end()};
}

inline MovieSummary load_movie(const std::filesystem::path& p) {
    const auto bytes = read_file(p);
    return summarize_movie(parse_swf(bytes), p.stem().string());
}

inline Template load_template(const std::string& spec) {
    if (auto t = builtin_template(spec)) {
        return *t;
    }
    return parse_template(read_text(spec));
}

// --<key> flags, applied on top of the settings file.
struct Overrides {
    std::map<std::string, std::string> values;

    void attach(CLI::App& cmd) {
        for (const auto key : kSettingKeys) {
            if (key == "alt-image") {
                continue; // bound to --image
            }
            const std::string k(key);
            cmd.add_option_function<std::string>(
                "--" + k, [this, k](const std::string& v) { values[k] = v; },
                "override the '" + k + "' setting");
        }
    }
};

struct SettingsSource {
    std::string settings_file;
    std::string image;
    Overrides overrides;

    void attach(CLI::App& cmd) {
        cmd.add_option("--settings", settings_file, "key = value publish settings file");
        cmd.add_option("--image,--alt-image", image, "alternate image for the image map");
        overrides.attach(cmd);
    }

    PublishSettings resolve() const {
        PublishSettings s;
        if (!settings_file.empty()) {
            s = parse_settings_file(read_text(settings_file));
        }
        for (const auto& [k, v] : overrides.values) {
            apply_setting(s, k, v);
        }
        if (!image.empty()) {
            s.alt_image = image;
        }
        validate(s);
        return s;
    }
};

inline std::optional<ImageInfo> probe_alt_image(const PublishSettings& s, bool format_explicit,
                                                std::vector<std::string>& warnings) {
    if (!s.alt_image) {
        return std::nullopt;
    }
    const auto info = probe_image_dimensions(read_file(*s.alt_image));
    if (format_explicit && info.format != s.image_format) {
        warnings.push_back("image-format is " + std::string(to_string(s.image_format)) + " but " +
                           *s.alt_image + " is " + std::string(to_string(info.format)));
    }
    return info;
}

inline void print_listing(const MovieSummary& m, const ParsedMovie& parsed, std::ostream& out) {
    out << "movie: " << m.movie_file() << "\n";
    out << "version: " << int{m.version} << "\n";
    out << "compressed: "
        << (parsed.header.signature == Signature::Compressed ? "yes" : "no") << "\n";
    out << "width: " << m.width_px << "\n";
    out << "height: " << m.height_px << "\n";
    out << "frame-rate: " << parsed.header.frames_per_second() << "\n";
    out << "frame-count: " << m.frame_count << "\n";
    out << "background: " << detail::hex_color(m.background_color) << "\n";
    for (const auto& l : m.frame_labels) {
        out << "label: " << l.frame_index << " " << l.label << "\n";
    }
    for (const auto& t : m.texts) {
        out << "text: " << t << "\n";
    }
    for (const auto& a : m.url_actions) {
        out << "url: " << a.frame_index << " " << to_string(a.source) << " " << a.url;
        if (!a.target.empty()) {
            out << " target=" << a.target;
        }
        out << "\n";
    }
    for (const auto& h : m.hotspots) {
        const Rect b = h.bounds_twips;
        out << "hotspot: button=" << h.button_id << " frame=" << h.frame_index << " twips="
            << b.x_min << "," << b.y_min << "," << b.x_max << "," << b.y_max << " " << h.url << "\n";
    }
    for (const auto& w : m.warnings) {
        out << "warning: " << w << "\n";
    }
}

inline ServerFlavor parse_flavor(const std::string& f) {
    if (f == "generic" || f == "mime-types") {
        return ServerFlavor::GenericMimeTypes;
    }
    if (f == "apache" || f == "htaccess") {
        return ServerFlavor::ApacheHtaccess;
    }
    if (f == "nginx") {
        return ServerFlavor::NginxTypes;
    }
    throw SettingsError("unknown server flavor '" + f + "'");
}

} // namespace cli_detail

/// Runs one command. `args` excludes the program name.
inline int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"Publish Flash Player movies as HTML pages", "swfpub"};
    app.require_subcommand(1, 1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "print progress details");

    std::string input;
    std::string output;
    std::string template_spec;
    bool strict = false;
    SettingsSource publish_src;
    auto* publish = app.add_subcommand("publish", "render an HTML page for a movie");
    publish->add_option("input", input, "movie file")->required();
    publish->add_option("-o,--output", output, "output HTML file (default: <input stem>.html)");
    publish->add_option("--template", template_spec, "built-in template name or template file");
    publish->add_flag("--strict", strict, "exit 1 when the document has warnings");
    publish_src.attach(*publish);

    auto* inspect = app.add_subcommand("inspect", "list what the movie contains");
    inspect->add_option("input", input, "movie file")->required();

    bool want_text = false;
    bool want_urls = false;
    auto* report = app.add_subcommand("report", "print the text or URL report comments");
    report->add_option("input", input, "movie file")->required();
    auto* text_flag = report->add_flag("--text", want_text, "texts used in the movie");
    report->add_flag("--urls", want_urls, "URLs used by GetURL actions")->excludes(text_flag);

    std::string image;
    auto* imagemap = app.add_subcommand("imagemap", "print the MAP element for the movie buttons");
    imagemap->add_option("input", input, "movie file")->required();
    imagemap->add_option("--image", image, "image the map applies to")->required();

    SettingsSource embed_src;
    auto* embed = app.add_subcommand("embed", "print a stand-alone OBJECT/EMBED element");
    embed->add_option("input", input, "movie file")->required();
    embed_src.attach(*embed);

    std::vector<std::string> urls;
    double timeout_s = 5.0;
    std::size_t jobs = kDefaultMaxInFlight;
    auto* check = app.add_subcommand("check-server", "verify served Flash Player MIME types");
    check->add_option("urls", urls, "URLs of .swf or .spl files")->required();
    check->add_option("--timeout", timeout_s, "per-request timeout in seconds");
    check->add_option("--jobs", jobs, "maximum concurrent requests")->check(CLI::PositiveNumber);

    std::string flavor = "generic";
    auto* server_config = app.add_subcommand("server-config", "print MIME configuration snippets");
    server_config->add_option("--flavor", flavor, "generic, apache or nginx");

    auto* templates = app.add_subcommand("templates", "list built-in templates");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::Invalid;
    }

    try {
        if (publish->parsed()) {
            PublishSettings s = publish_src.resolve();
            std::vector<std::string> prelude;
            const auto image_info =
                probe_alt_image(s, publish_src.overrides.values.count("image-format") > 0, prelude);
            const Template t = load_template(
                !template_spec.empty() ? template_spec : (s.alt_image ? "imagemap" : "default"));
            const MovieSummary movie = load_movie(input);
            auto doc = publish_html(movie, s, t, image_info);
            const std::filesystem::path in_path(input);
            const std::filesystem::path out_path =
                output.empty() ? in_path.parent_path() / (in_path.stem().string() + ".html")
                               : std::filesystem::path(output);
            std::ofstream file(out_path, std::ios::binary);
            if (!file || !(file << doc.html)) {
                throw InputError("cannot write " + out_path.string());
            }
            for (const auto& w : movie.warnings) {
                err << "warning: " << w << "\n";
            }
            for (const auto& w : prelude) {
                err << "warning: " << w << "\n";
            }
            for (const auto& w : doc.warnings) {
                err << "warning: " << w << "\n";
            }
            if (verbose) {
                out << "wrote " << out_path.string() << "\n";
            }
            const bool warned = !doc.warnings.empty() || !prelude.empty();
            return strict && warned ? exit_code::Warnings : exit_code::Ok;
        }
        if (inspect->parsed()) {
            const auto bytes = read_file(input);
            const auto parsed = parse_swf(bytes);
            const auto movie =
                summarize_movie(parsed, std::filesystem::path(input).stem().string());
            print_listing(movie, parsed, out);
            return exit_code::Ok;
        }
        if (report->parsed()) {
            if (!want_text && !want_urls) {
                err << "error: report needs --text or --urls\n";
                return exit_code::Invalid;
            }
            const auto movie = load_movie(input);
            const std::string block =
                want_text ? generate_text_report(movie) : generate_url_report(movie);
            if (!block.empty()) {
                out << block << "\n";
            }
            return exit_code::Ok;
        }
        if (imagemap->parsed()) {
            const auto info = probe_image_dimensions(read_file(image));
            const auto movie = load_movie(input);
            const auto map = generate_image_map(movie, detail::file_name_of(image), info.width_px,
                                                info.height_px);
            for (const auto& w : map.warnings) {
                err << "warning: " << w << "\n";
            }
            if (!map.im.empty()) {
                out << map.im << "\n";
            }
            return exit_code::Ok;
        }
        if (embed->parsed()) {
            const auto s = embed_src.resolve();
            out << emit_object_element(load_movie(input), s) << "\n";
            return exit_code::Ok;
        }
        if (check->parsed()) {
            const auto timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
            const auto results = check_many(urls, timeout, jobs);
            bool all_pass = true;
            for (const auto& u : urls) {
                const auto& r = results.at(u);
                all_pass = all_pass && r.verdict == Verdict::Pass;
                out << to_string(r.verdict) << " " << r.url << " status=" << r.http_status
                    << " type=" << r.observed_type.value_or("-") << " expected=" << r.expected_type;
                if (!r.detail.empty() && verbose) {
                    out << " (" << r.detail << ")";
                }
                out << "\n";
            }
            return all_pass ? exit_code::Ok : exit_code::ServerCheckFailed;
        }
        if (server_config->parsed()) {
            out << emit_server_config(parse_flavor(flavor));
            return exit_code::Ok;
        }
        if (templates->parsed()) {
            for (const auto& b : builtin_templates()) {
                const auto t = parse_template(b.source);
                out << b.name << ": " << t.headline << "\n";
                std::string desc = t.description;
                for (std::size_t p = 0; (p = desc.find('\n', p)) != std::string::npos; p += 5) {
                    desc.replace(p, 1, "\n    ");
                }
                out << "    " << desc << "\n";
            }
            return exit_code::Ok;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::Invalid;
    }
    return exit_code::Invalid;
}

} // namespace swfpub
