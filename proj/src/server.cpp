#include "gts/server.hpp"

#include <memory>
#include <string>

namespace gts {

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message,
                const std::vector<std::string>& fields = {}) {
    nlohmann::json body{{"error", message}};
    if (!fields.empty()) body["fields"] = fields;
    send_json(res, status, body);
}

Granularity parse_granularity(const httplib::Request& req) {
    if (!req.has_param("granularity")) return Granularity::phase;
    const auto g = req.get_param_value("granularity");
    if (g == "phase") return Granularity::phase;
    if (g == "step" || g == "full-step") return Granularity::step;
    throw ValidationError({"granularity"});
}

// Maps library errors onto HTTP status codes.
template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const NotFound& e) {
        send_error(res, 404, e.what());
    } catch (const ValidationError& e) {
        send_error(res, 400, e.what(), e.fields());
    } catch (const nlohmann::json::exception& e) {
        send_error(res, 400, std::string("malformed JSON: ") + e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, e.what());
    }
}

}  // namespace

void install_routes(httplib::Server& server, SessionManager& sessions) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
    });

    server.Post("/sessions", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto body = req.body.empty() ? nlohmann::json::object() : nlohmann::json::parse(req.body);
            const auto config = body.get<SessionConfig>();
            auto [id, snap] = sessions.create(config);
            send_json(res, 201, {{"session_id", id}, {"snapshot", snap}});
        });
    });

    server.Get(R"(/sessions/([^/]+))", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, sessions.snapshot(req.matches[1])); });
    });

    server.Delete(R"(/sessions/([^/]+))", [&sessions](const httplib::Request& req, httplib::Response& res) {
        if (sessions.remove(req.matches[1]))
            res.status = 204;
        else
            send_error(res, 404, "no session '" + std::string(req.matches[1]) + "'");
    });

    server.Post(R"(/sessions/([^/]+)/advance)",
                [&sessions](const httplib::Request& req, httplib::Response& res) {
                    guarded(res, [&] {
                        send_json(res, 200, sessions.advance(req.matches[1], parse_granularity(req)));
                    });
                });

    server.Post(R"(/sessions/([^/]+)/reset)", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, sessions.reset(req.matches[1])); });
    });

    server.Post(R"(/sessions/([^/]+)/play)", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const std::string id = req.matches[1];
            const auto granularity = parse_granularity(req);
            std::size_t count = 1;
            if (req.has_param("count")) {
                try {
                    count = std::stoul(req.get_param_value("count"));
                } catch (const std::exception&) {
                    throw ValidationError({"count"});
                }
            }
            if (count < 1 || count > 10000) throw ValidationError({"count"});
            sessions.snapshot(id);  // 404 before the stream starts
            auto sent = std::make_shared<std::size_t>(0);
            res.set_chunked_content_provider(
                "application/x-ndjson",
                [&sessions, id, granularity, count, sent](std::size_t, httplib::DataSink& sink) {
                    try {
                        const auto line = nlohmann::json(sessions.advance(id, granularity)).dump() + "\n";
                        if (!sink.write(line.data(), line.size())) return false;
                    } catch (const std::exception&) {
                        sink.done();
                        return true;
                    }
                    if (++*sent == count) sink.done();
                    return true;
                });
        });
    });
}

}  // namespace gts
