#include "ontoview/http_server.hpp"

#include <functional>
#include <stdexcept>

#include <httplib.h>

namespace ontoview {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kSession = "/sessions/([0-9a-f]+)";

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) {
        return json::object();
    }
    auto body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
        throw ApiError(400, "request body is not valid JSON");
    }
    return body;
}

/// Runs `f`, mapping ApiError to its status and anything else to 500.
void guard(httplib::Response& res, const std::function<void()>& f) {
    try {
        f();
    } catch (const ApiError& e) {
        send(res, e.status, e.body);
    } catch (const std::exception& e) {
        send(res, 500, {{"error", e.what()}});
    }
}

}  // namespace

struct HttpServer::Impl {
    Service& service;
    httplib::Server server;

    using Action = json (Service::*)(const std::string&, const json&);

    explicit Impl(Service& s) : service(s) {
        const auto& cfg = service.config().server;
        const auto threads = cfg.threads;
        server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
        server.set_payload_max_length(cfg.max_body_mb * 1024 * 1024);
        server.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Origin", "*");
        });
        server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.status = 204;
        });
        server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
            if (res.body.empty()) {
                res.set_content(json{{"error", httplib::status_message(res.status)}}.dump(), kJson);
            }
        });
        if (!cfg.static_dir.empty() && !server.set_mount_point("/", cfg.static_dir)) {
            throw std::runtime_error("static directory " + cfg.static_dir + " does not exist");
        }
        routes();
    }

    void post(const std::string& suffix, Action action) {
        server.Post(std::string(kSession) + suffix, [this, action](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] { send(res, 200, (service.*action)(req.matches[1], parse_body(req))); });
        });
    }

    void routes() {
        server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
            send(res, 200, {{"status", "ok"}, {"sessions", service.session_count()}});
        });
        server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] {
                const bool is_json = req.get_header_value("Content-Type").starts_with(kJson);
                const json request = is_json ? parse_body(req) : json{{"text", req.body}};
                send(res, 201, service.create_session(request));
            });
        });
        server.Delete(kSession, [this](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] {
                service.delete_session(req.matches[1]);
                res.status = 204;
            });
        });
        server.Get(std::string(kSession) + "/graph", [this](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] { send(res, 200, service.graph(req.matches[1])); });
        });
        post("/expand", &Service::expand);
        post("/collapse", &Service::collapse);
        post("/slider", &Service::slider);
        post("/policy", &Service::policy);
        post("/step", &Service::step);
        post("/detail-window", &Service::detail_window);
        post("/summarize", &Service::summarize);
        post("/select", &Service::select);
        post("/markers", &Service::markers);
        post("/move", &Service::move);
        post("/zoom", &Service::zoom);
        post("/view", &Service::load_view);
        server.Get(std::string(kSession) + "/view", [this](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] { send(res, 200, service.save_view(req.matches[1])); });
        });
        server.Get(std::string(kSession) + "/search", [this](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] { send(res, 200, service.search(req.matches[1], req.get_param_value("q"))); });
        });
        server.Get(std::string(kSession) + "/node/([A-Za-z0-9]+)",
                   [this](const httplib::Request& req, httplib::Response& res) {
                       guard(res, [&] { send(res, 200, service.node(req.matches[1], req.matches[2])); });
                   });
        server.Get(std::string(kSession) + "/export\\.svg", [this](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] { res.set_content(service.export_svg(req.matches[1]), "image/svg+xml"); });
        });
        server.Get(std::string(kSession) + "/export\\.dot", [this](const httplib::Request& req, httplib::Response& res) {
            guard(res, [&] { res.set_content(service.export_dot(req.matches[1]), "text/vnd.graphviz"); });
        });
    }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        const int bound = impl_->server.bind_to_any_port(host);
        if (bound < 0) {
            throw std::runtime_error("cannot bind " + host);
        }
        return bound;
    }
    if (!impl_->server.bind_to_port(host, port)) {
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) {
        impl_->server.stop();
    }
}

}  // namespace ontoview
