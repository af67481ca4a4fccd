#pragma once

#include <httplib.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <string>
#include <thread>

namespace swftest {

/// Local HTTP server scripted for MIME checks:
///   /ok.swf        200 application/x-shockwave-flash
///   /ok.spl        200 application/futuresplash
///   /param.swf     200 application/x-shockwave-flash; charset=binary
///   /upper.SWF     200 Application/X-Shockwave-Flash
///   /wrong.swf     200 text/plain
///   /bare.swf      200 with no Content-Type
///   /missing.swf   404
///   /nohead.swf    405 on HEAD, 200 flash type on GET
///   /gettype.swf   HEAD without Content-Type, GET with flash type
///   /moved.swf     302 -> /ok.swf
///   /loop<N>.swf   302 -> /loop<N+1>.swf (endless)
class StubServer {
public:
    StubServer() {
        using httplib::Request;
        using httplib::Response;
        auto typed = [](const char* type) {
            return [type](const Request&, Response& res) { res.set_content("FWS", type); };
        };
        server_.Get("/ok.swf", typed("application/x-shockwave-flash"));
        server_.Get("/ok.spl", typed("application/futuresplash"));
        server_.Get("/param.swf", typed("application/x-shockwave-flash; charset=binary"));
        server_.Get("/upper.SWF", typed("Application/X-Shockwave-Flash"));
        server_.Get("/wrong.swf", typed("text/plain"));
        // httplib labels any non-empty body text/plain, so this one stays empty.
        server_.Get("/bare.swf", [](const Request&, Response& res) { res.status = 200; });
        server_.Get("/missing.swf", [](const Request&, Response& res) { res.status = 404; });
        server_.Get("/nohead.swf", [](const Request& req, Response& res) {
            if (req.method == "HEAD") {
                res.status = 405;
                return;
            }
            res.set_content("FWS", "application/x-shockwave-flash");
        });
        server_.Get("/gettype.swf", [](const Request& req, Response& res) {
            if (req.method == "HEAD") {
                res.status = 200;
                return;
            }
            res.set_content("FWS", "application/x-shockwave-flash");
        });
        server_.Get("/moved.swf", [](const Request&, Response& res) {
            res.set_redirect("/ok.swf");
        });
        server_.Get(R"(/loop(\d+)\.swf)", [](const Request& req, Response& res) {
            const int n = std::stoi(req.matches[1]);
            res.set_redirect("/loop" + std::to_string(n + 1) + ".swf");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubServer() {
        server_.stop();
        thread_.join();
    }

    StubServer(const StubServer&) = delete;
    StubServer& operator=(const StubServer&) = delete;

    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

/// A loopback port with nothing listening on it.
inline int closed_port() {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
    socklen_t len = sizeof addr;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    ::close(fd);
    return ntohs(addr.sin_port);
}

} // namespace swftest
