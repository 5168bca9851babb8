#pragma once

#include <memory>
#include <string>

#include "ontoview/service.hpp"

namespace ontoview {

/// JSON-over-HTTP front end for a Service. Routes live under /sessions; see README.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds without serving yet; port 0 picks a free port. Returns the bound port, throws std::runtime_error.
    int bind(const std::string& host, int port);
    /// Serves until stop(). Blocks.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ontoview
