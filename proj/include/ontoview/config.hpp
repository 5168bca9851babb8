#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ontoview/layout.hpp"
#include "ontoview/relevance.hpp"
#include "ontoview/view_state.hpp"

namespace ontoview {

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t threads = 8;
    std::size_t max_body_mb = 64;
    /// Directory served at "/" (the web client), empty for none.
    std::string static_dir;
};

struct ViewConfig {
    double step = 25.0;
    /// Unset: relevance on Thing, general-first elsewhere.
    std::optional<Policy> policy;
    /// Scorer behind the relevance policy.
    std::string relevance = "pagerank";
};

struct Config {
    ServerConfig server;
    ViewConfig view;
    RelevanceConfig relevance;
    LayoutOptions layout;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Sections and `key = value` lines:
 *
 *   [server]      host, port, threads, max_body_mb, static_dir
 *   [view]        step, policy (auto | relevance | general-first | specific-first), relevance
 *   [relevance]   damping, epsilon, kce_density, kce_coverage, kce_simplicity
 *   [layout]      level_gap, node_gap, margin, node_height, property_row, char_width, padding, min_band, sweeps
 *
 * `#` starts a comment; strings may be double-quoted. Unknown sections or keys are errors.
 */
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

inline constexpr const char* kConfigEnv = "ONTOVIEW_CONFIG";

/// `path` if given, else $ONTOVIEW_CONFIG if set, else defaults.
Config resolve_config(const std::optional<std::string>& path);

}  // namespace ontoview
