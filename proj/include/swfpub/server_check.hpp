#pragma once

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace swfpub {

inline constexpr std::string_view kSwfMimeType = "application/x-shockwave-flash";
inline constexpr std::string_view kSplMimeType = "application/futuresplash";
inline constexpr int kMaxRedirects = 5;
inline constexpr std::size_t kDefaultMaxInFlight = 8;

enum class Verdict { Pass, WrongType, MissingType, HttpError, NetworkError };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::WrongType: return "wrong-type";
    case Verdict::MissingType: return "missing-type";
    case Verdict::HttpError: return "http-error";
    case Verdict::NetworkError: return "network-error";
    }
    return "network-error";
}

struct MimeCheckResult {
    std::string url;
    int http_status = 0; // 0 when no response arrived
    std::optional<std::string> observed_type;
    std::string expected_type;
    Verdict verdict = Verdict::NetworkError;
    std::string detail;
};

class UnsupportedUrl : public std::invalid_argument {
public:
    explicit UnsupportedUrl(const std::string& what) : std::invalid_argument("UnsupportedUrl: " + what) {}
};

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

struct Url {
    std::string scheme;
    std::string authority; // host[:port]
    std::string target;    // path + query, never empty

    std::string origin() const { return scheme + "://" + authority; }
    std::string str() const { return origin() + target; }
};

inline std::optional<Url> parse_url(std::string_view text) {
    const auto sep = text.find("://");
    if (sep == std::string_view::npos || sep == 0) {
        return std::nullopt;
    }
    Url u;
    u.scheme = lower(text.substr(0, sep));
    std::string_view rest = text.substr(sep + 3);
    rest = rest.substr(0, rest.find('#'));
    const auto slash = rest.find_first_of("/?");
    u.authority = std::string(rest.substr(0, slash));
    if (u.authority.empty()) {
        return std::nullopt;
    }
    u.target = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
    if (u.target.front() == '?') {
        u.target.insert(u.target.begin(), '/');
    }
    return u;
}

inline Url resolve(const Url& base, std::string_view location) {
    if (location.find("://") != std::string_view::npos) {
        if (auto u = parse_url(location)) {
            return *u;
        }
    }
    Url u = base;
    if (location.substr(0, 2) == "//") {
        if (auto p = parse_url(base.scheme + ":" + std::string(location))) {
            return *p;
        }
    }
    if (!location.empty() && location.front() == '/') {
        u.target = std::string(location);
    } else {
        const std::string path = base.target.substr(0, base.target.find('?'));
        u.target = path.substr(0, path.rfind('/') + 1) + std::string(location);
    }
    return u;
}

struct Probe {
    int status = 0;
    std::optional<std::string> content_type;
    std::optional<std::string> location;
    std::string error;
};

inline Probe fetch(const Url& url, bool head, std::chrono::milliseconds timeout) {
    httplib::Client client(url.origin());
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    client.set_follow_location(false);

    Probe p;
    auto capture = [&p](const httplib::Response& res) {
        p.status = res.status;
        if (res.has_header("Content-Type")) {
            p.content_type = res.get_header_value("Content-Type");
        }
        if (res.has_header("Location")) {
            p.location = res.get_header_value("Location");
        }
    };
    if (head) {
        auto res = client.Head(url.target);
        if (!res) {
            p.error = httplib::to_string(res.error());
            return p;
        }
        capture(*res);
        return p;
    }
    // Headers are all we need: stop before reading the body.
    auto res = client.Get(
        url.target, httplib::Headers{},
        [&](const httplib::Response& r) {
            capture(r);
            return false;
        },
        [](const char*, std::size_t) { return false; });
    if (p.status == 0) {
        p.error = httplib::to_string(res.error());
    }
    return p;
}

} // namespace detail

/// Media type a server must send for a Flash Player file, keyed by the
/// (case-insensitive) extension of a path or URL.
inline std::optional<std::string> expected_mime_for(std::string_view path_or_url) {
    std::string_view path = path_or_url;
    path = path.substr(0, path.find_first_of("?#"));
    const auto dot = path.rfind('.');
    if (dot == std::string_view::npos || path.find('/', dot) != std::string_view::npos) {
        return std::nullopt;
    }
    const std::string ext = detail::lower(path.substr(dot + 1));
    if (ext == "swf") {
        return std::string(kSwfMimeType);
    }
    if (ext == "spl") {
        return std::string(kSplMimeType);
    }
    return std::nullopt;
}

/// Media-type part of a Content-Type value, lowercased, parameters dropped.
inline std::string media_type(std::string_view content_type) {
    return detail::lower(detail::trim(content_type.substr(0, content_type.find(';'))));
}

/// Verdict for a response; status 0 means no response was received.
inline Verdict classify(int http_status, const std::optional<std::string>& observed_type,
                        std::string_view expected_type) {
    if (http_status <= 0) {
        return Verdict::NetworkError;
    }
    if (http_status < 200 || http_status > 299) {
        return Verdict::HttpError;
    }
    if (!observed_type || media_type(*observed_type).empty()) {
        return Verdict::MissingType;
    }
    return media_type(*observed_type) == detail::lower(expected_type) ? Verdict::Pass
                                                                      : Verdict::WrongType;
}

/// HEAD request (GET fallback on 405 or a missing Content-Type), following
/// at most five redirects. Network failures become a verdict, never an
/// exception.
inline MimeCheckResult check_mime(const std::string& url, std::chrono::milliseconds timeout) {
    const auto expected = expected_mime_for(url);
    auto parsed = detail::parse_url(url);
    if (!parsed || (parsed->scheme != "http" && parsed->scheme != "https")) {
        throw UnsupportedUrl("only http and https URLs can be checked: " + url);
    }
    if (!expected) {
        throw UnsupportedUrl("no Flash Player MIME type is defined for " + url);
    }
    MimeCheckResult result;
    result.url = url;
    result.expected_type = *expected;

    detail::Url current = *parsed;
    detail::Probe probe;
    for (int hop = 0;; ++hop) {
        try {
            probe = detail::fetch(current, true, timeout);
            if (probe.status == 405 || (probe.status != 0 && !probe.content_type &&
                                        !(probe.status >= 300 && probe.status < 400))) {
                auto get = detail::fetch(current, false, timeout);
                if (get.status != 0) {
                    probe = std::move(get);
                }
            }
        } catch (const std::exception& e) {
            probe = {};
            probe.error = e.what();
        }
        const bool redirect = probe.status >= 300 && probe.status < 400 && probe.location;
        if (!redirect || hop == kMaxRedirects) {
            break;
        }
        current = detail::resolve(current, *probe.location);
        if (current.scheme != "http" && current.scheme != "https") {
            break;
        }
    }
    result.http_status = probe.status;
    result.observed_type = probe.content_type;
    result.detail = probe.error;
    result.verdict = classify(probe.status, probe.content_type, result.expected_type);
    return result;
}

/// Checks many URLs with at most `max_in_flight` requests outstanding.
/// Results are keyed by URL; all URLs are validated before any request.
inline std::map<std::string, MimeCheckResult> check_many(const std::vector<std::string>& urls,
                                                         std::chrono::milliseconds timeout,
                                                         std::size_t max_in_flight = kDefaultMaxInFlight) {
    for (const auto& u : urls) {
        const auto p = detail::parse_url(u);
        if (!p || (p->scheme != "http" && p->scheme != "https") || !expected_mime_for(u)) {
            throw UnsupportedUrl(u);
        }
    }
    std::map<std::string, MimeCheckResult> results;
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < urls.size();) {
            auto r = check_mime(urls[i], timeout);
            std::lock_guard lock(mu);
            results.insert_or_assign(urls[i], std::move(r));
        }
    };
    const std::size_t n = std::min(std::max<std::size_t>(max_in_flight, 1), urls.size());
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < n; ++k) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return results;
}

enum class ServerFlavor { GenericMimeTypes, ApacheHtaccess, NginxTypes };

/// Configuration snippet associating .swf and .spl with their media types.
inline std::string emit_server_config(ServerFlavor flavor) {
    std::string out;
    switch (flavor) {
    case ServerFlavor::GenericMimeTypes:
        out = "# mime.types entries for Flash Player files\n"
              "application/x-shockwave-flash swf\n"
              "application/futuresplash spl\n";
        break;
    case ServerFlavor::ApacheHtaccess:
        out = "# .htaccess entries for Flash Player files\n"
              "AddType application/x-shockwave-flash .swf\n"
              "AddType application/futuresplash .spl\n";
        break;
    case ServerFlavor::NginxTypes:
        out = "# nginx types block for Flash Player files\n"
              "types {\n"
              "    application/x-shockwave-flash swf;\n"
              "    application/futuresplash spl;\n"
              "}\n";
        break;
    }
    out += "# Macintosh servers: Action: Binary; Type: SWFL and Creator: SWF2\n";
    return out;
}

} // namespace swfpub
