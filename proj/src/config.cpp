#include "ontoview/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ontoview {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Line {
    std::size_t number;
    std::string key;
    std::string value;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("config line " + std::to_string(number) + ": " + what);
    }

    double real() const {
        double v = 0;
        const auto* end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, v);
        if (ec != std::errc() || ptr != end) {
            fail(key + " expects a number, got '" + value + "'");
        }
        return v;
    }

    std::size_t count() const {
        std::size_t v = 0;
        const auto* end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, v);
        if (ec != std::errc() || ptr != end) {
            fail(key + " expects a non-negative integer, got '" + value + "'");
        }
        return v;
    }
};

void apply(Config& c, const std::string& section, const Line& l) {
    const auto& k = l.key;
    if (section == "server") {
        if (k == "host") {
            c.server.host = l.value;
        } else if (k == "port") {
            const auto p = l.count();
            if (p > 65535) {
                l.fail("port out of range");
            }
            c.server.port = static_cast<int>(p);
        } else if (k == "threads") {
            c.server.threads = std::max<std::size_t>(1, l.count());
        } else if (k == "max_body_mb") {
            c.server.max_body_mb = l.count();
        } else if (k == "static_dir") {
            c.server.static_dir = l.value;
        } else {
            l.fail("unknown key " + k + " in [server]");
        }
    } else if (section == "view") {
        if (k == "step") {
            c.view.step = l.real();
            if (!(c.view.step > 0.0 && c.view.step <= 100.0)) {
                l.fail("step must lie in (0, 100]");
            }
        } else if (k == "policy") {
            if (l.value == "auto") {
                c.view.policy.reset();
            } else if (auto p = parse_policy(l.value)) {
                c.view.policy = p;
            } else {
                l.fail("unknown policy " + l.value);
            }
        } else if (k == "relevance") {
            c.view.relevance = l.value;
        } else {
            l.fail("unknown key " + k + " in [view]");
        }
    } else if (section == "relevance") {
        if (k == "damping") {
            c.relevance.pagerank.damping = l.real();
            if (!(c.relevance.pagerank.damping > 0.0 && c.relevance.pagerank.damping < 1.0)) {
                l.fail("damping must lie in (0, 1)");
            }
        } else if (k == "epsilon") {
            c.relevance.pagerank.epsilon = l.real();
        } else if (k == "kce_density") {
            c.relevance.kce.density = l.real();
        } else if (k == "kce_coverage") {
            c.relevance.kce.coverage = l.real();
        } else if (k == "kce_simplicity") {
            c.relevance.kce.simplicity = l.real();
        } else {
            l.fail("unknown key " + k + " in [relevance]");
        }
    } else if (section == "layout") {
        auto& o = c.layout;
        if (k == "level_gap") {
            o.level_gap = l.real();
        } else if (k == "node_gap") {
            o.node_gap = l.real();
        } else if (k == "margin") {
            o.margin = l.real();
        } else if (k == "node_height") {
            o.node_height = l.real();
        } else if (k == "property_row") {
            o.property_row = l.real();
        } else if (k == "char_width") {
            o.char_width = l.real();
        } else if (k == "padding") {
            o.padding = l.real();
        } else if (k == "min_band") {
            o.min_band = l.real();
        } else if (k == "sweeps") {
            o.sweeps = l.count();
        } else {
            l.fail("unknown key " + k + " in [layout]");
        }
    } else {
        l.fail("key outside a known section");
    }
}

}  // namespace

Config parse_config(std::string_view text) {
    Config c;
    std::string section;
    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        std::string_view s = raw;
        if (const auto hash = s.find('#'); hash != std::string_view::npos && s.substr(0, hash).find('"') == std::string_view::npos) {
            s = s.substr(0, hash);
        }
        s = trim(s);
        if (s.empty()) {
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') {
                throw ConfigError("config line " + std::to_string(number) + ": unterminated section header");
            }
            section = std::string(trim(s.substr(1, s.size() - 2)));
            if (section != "server" && section != "view" && section != "relevance" && section != "layout") {
                throw ConfigError("config line " + std::to_string(number) + ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        }
        Line l{number, std::string(trim(s.substr(0, eq))), std::string(trim(s.substr(eq + 1)))};
        if (l.value.size() >= 2 && l.value.front() == '"' && l.value.back() == '"') {
            l.value = l.value.substr(1, l.value.size() - 2);
        }
        apply(c, section, l);
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config(s.str());
}

Config resolve_config(const std::optional<std::string>& path) {
    if (path) {
        return load_config(*path);
    }
    if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') {
        return load_config(env);
    }
    return {};
}

}  // namespace ontoview
