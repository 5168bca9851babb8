#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ontoview/config.hpp"
#include "ontoview/document.hpp"
#include "ontoview/render.hpp"
#include "ontoview/view_state.hpp"

namespace ontoview {

/// A request the API rejects; `status` is the HTTP status, `body` the JSON error payload.
class ApiError : public std::runtime_error {
public:
    ApiError(int status, const std::string& message, nlohmann::json details = nullptr);
    int status;
    nlohmann::json body;
};

/**
 * Engine behind the HTTP API. Every method takes and returns JSON (the
 * schema lives in schema/api.schema.json) and throws ApiError. Documents are
 * loaded once per distinct text and shared by all their sessions; each
 * session owns one ViewState and serializes its own mutations.
 */
class Service {
public:
    explicit Service(Config config = {});
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    const Config& config() const noexcept { return config_; }

    /// {"path": file} or {"text": ontology}. 201-style payload: session id, timings, graph.
    nlohmann::json create_session(const nlohmann::json& request);
    void delete_session(const std::string& session);
    std::size_t session_count() const;

    nlohmann::json graph(const std::string& session);
    /// {"node": id, "direction": "descendants" | "ancestors"}
    nlohmann::json expand(const std::string& session, const nlohmann::json& request);
    nlohmann::json collapse(const std::string& session, const nlohmann::json& request);
    /// {"node": id, "percent": 0..100}
    nlohmann::json slider(const std::string& session, const nlohmann::json& request);
    /// {"policy": "auto" | "relevance" | "general-first" | "specific-first"}
    nlohmann::json policy(const std::string& session, const nlohmann::json& request);
    /// {"percent": (0, 100]}
    nlohmann::json step(const std::string& session, const nlohmann::json& request);
    /// {"upper": expression, "lower": expression}, functional syntax with the ontology's prefixes.
    nlohmann::json detail_window(const std::string& session, const nlohmann::json& request);
    /// {"method": "kce" | "pagerank" | "rdfrank" | "custom", "n": count, "concepts": [ids]}
    nlohmann::json summarize(const std::string& session, const nlohmann::json& request);
    /// {"node": id | null}
    nlohmann::json select(const std::string& session, const nlohmann::json& request);
    /// {"node": id, "disjoint": bool, "properties": bool}
    nlohmann::json markers(const std::string& session, const nlohmann::json& request);
    /// {"node": id, "x": real, "y": real}, or {"node": id, "reset": true}
    nlohmann::json move(const std::string& session, const nlohmann::json& request);
    /// {"zoom": positive real}
    nlohmann::json zoom(const std::string& session, const nlohmann::json& request);

    nlohmann::json search(const std::string& session, const std::string& query);
    nlohmann::json node(const std::string& session, const std::string& node);
    std::string export_svg(const std::string& session);
    std::string export_dot(const std::string& session);
    nlohmann::json save_view(const std::string& session);
    nlohmann::json load_view(const std::string& session, const nlohmann::json& document);

private:
    struct DocumentEntry;
    struct Session;

    std::shared_ptr<Session> find(const std::string& session) const;
    std::shared_ptr<const Explorer> explorer_for(DocumentEntry& entry, const DetailWindow& window);
    nlohmann::json graph_json(const Session& s) const;
    nlohmann::json mutation(const Session& s, const Change& change) const;
    std::size_t node_index(const Session& s, const nlohmann::json& id) const;

    Config config_;
    ScorerRegistry scorers_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<DocumentEntry>> documents_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace ontoview
