#include "ontoview/service.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "ontoview/functional_syntax.hpp"
#include "ontoview/view_document.hpp"

namespace ontoview {

using nlohmann::json;

ApiError::ApiError(int status, const std::string& message, json details)
    : std::runtime_error(message), status(status) {
    body = {{"error", message}};
    if (!details.is_null()) {
        body["details"] = std::move(details);
    }
}

struct Service::DocumentEntry {
    std::shared_ptr<const Document> document;
    double parse_ms = 0;
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const Explorer>> explorers;
};

struct Service::Session {
    std::string id;
    std::shared_ptr<DocumentEntry> entry;
    std::shared_ptr<const Explorer> explorer;
    ViewState state;
    std::chrono::system_clock::time_point created;
    std::mutex mutex;

    const OntoGraph& graph() const { return explorer->graph(); }
    const Ontology& ontology() const { return entry->document->ontology(); }
};

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string new_token() {
    static std::mutex m;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(m);
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                  static_cast<unsigned long long>(rng()));
    return buf;
}

std::string window_key(const DetailWindow& w) { return to_functional(w.upper) + "|" + to_functional(w.lower); }

std::string short_name(const Iri& iri, const PrefixTable& prefixes) {
    if (auto a = prefixes.abbreviate(iri)) {
        return a->front() == ':' ? a->substr(1) : *a;
    }
    return iri.str();
}

const json& require(const json& request, const char* key) {
    if (!request.is_object() || !request.contains(key)) {
        throw ApiError(400, std::string("request needs field '") + key + "'");
    }
    return request.at(key);
}

double require_number(const json& request, const char* key) {
    const auto& v = require(request, key);
    if (!v.is_number()) {
        throw ApiError(400, std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

json change_json(const OntoGraph& g, const Change& c) {
    json revealed = json::array();
    json hidden = json::array();
    for (const auto v : c.revealed) {
        revealed.push_back(g.nodes[v].id);
    }
    for (const auto v : c.hidden) {
        hidden.push_back(g.nodes[v].id);
    }
    return {{"revealed", revealed}, {"hidden", hidden}, {"noop", c.noop()}};
}

json route_json(const std::vector<Point>& route) {
    json out = json::array();
    for (const auto& p : route) {
        out.push_back({p.x, p.y});
    }
    return out;
}

}  // namespace

Service::Service(Config config) : config_(std::move(config)), scorers_(config_.relevance) {
    if (!scorers_.contains(config_.view.relevance)) {
        throw ConfigError("unknown relevance scorer " + config_.view.relevance);
    }
}

Service::~Service() = default;

std::shared_ptr<Service::Session> Service::find(const std::string& session) const {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(session);
    if (it == sessions_.end()) {
        throw ApiError(404, "unknown session " + session);
    }
    return it->second;
}

std::size_t Service::session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

void Service::delete_session(const std::string& session) {
    std::lock_guard lock(mutex_);
    if (sessions_.erase(session) == 0) {
        throw ApiError(404, "unknown session " + session);
    }
    std::erase_if(documents_, [](const auto& d) { return d.second.use_count() == 1; });
}

std::shared_ptr<const Explorer> Service::explorer_for(DocumentEntry& entry, const DetailWindow& window) {
    std::lock_guard lock(entry.mutex);
    const auto key = window_key(window);
    if (const auto it = entry.explorers.find(key); it != entry.explorers.end()) {
        return it->second;
    }
    std::shared_ptr<const OntoGraph> graph;
    try {
        graph = std::make_shared<const OntoGraph>(entry.document->build(window));
    } catch (const InvalidWindowError& e) {
        throw ApiError(400, e.what());
    }
    auto scores = scorers_.score(config_.view.relevance, *graph);
    auto explorer = std::make_shared<const Explorer>(graph, std::move(scores));
    entry.explorers.emplace(key, explorer);
    return explorer;
}

json Service::create_session(const json& request) {
    std::string text;
    if (request.is_object() && request.contains("path")) {
        if (!request.at("path").is_string()) {
            throw ApiError(400, "field 'path' must be a string");
        }
        const auto path = request.at("path").get<std::string>();
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw ApiError(400, "cannot read " + path);
        }
        std::ostringstream s;
        s << in.rdbuf();
        text = s.str();
    } else if (request.is_object() && request.contains("text") && request.at("text").is_string()) {
        text = request.at("text").get<std::string>();
    } else {
        throw ApiError(400, "request needs 'path' or 'text'");
    }

    const std::string key = stable_hash(text) + ":" + std::to_string(text.size());
    std::shared_ptr<DocumentEntry> entry;
    {
        std::lock_guard lock(mutex_);
        if (const auto it = documents_.find(key); it != documents_.end()) {
            entry = it->second;
        }
    }
    const bool cached = entry != nullptr;
    if (!entry) {
        auto loaded = load_document(text);
        if (!loaded.errors.empty()) {
            json errors = json::array();
            for (const auto& e : loaded.errors) {
                errors.push_back({{"line", e.line}, {"column", e.column}, {"message", e.message}, {"token", e.token}});
            }
            throw ApiError(422, "ontology has parse errors", errors);
        }
        if (!loaded.ok()) {
            throw ApiError(422, loaded.failure);
        }
        entry = std::make_shared<DocumentEntry>();
        entry->document = loaded.document;
        entry->parse_ms = loaded.parse_ms;
        std::lock_guard lock(mutex_);
        entry = documents_.try_emplace(key, entry).first->second;
    }

    auto session = std::make_shared<Session>();
    session->id = new_token();
    session->entry = entry;
    session->created = std::chrono::system_clock::now();
    auto start = std::chrono::steady_clock::now();
    session->explorer = explorer_for(*entry, DetailWindow{});
    const double build_ms = elapsed_ms(start);
    session->state = session->explorer->initial_state();
    session->state.step_percent = config_.view.step;
    session->state.policy = config_.view.policy;

    start = std::chrono::steady_clock::now();
    json graph = graph_json(*session);
    const double layout_ms = elapsed_ms(start);
    {
        std::lock_guard lock(mutex_);
        sessions_.emplace(session->id, session);
    }
    return {{"session", session->id},
            {"timing",
             {{"parse_ms", entry->parse_ms},
              {"classify_ms", entry->document->classify_ms()},
              {"build_ms", build_ms},
              {"layout_ms", layout_ms},
              {"cached", cached}}},
            {"graph", std::move(graph)}};
}

std::size_t Service::node_index(const Session& s, const json& id) const {
    if (!id.is_string()) {
        throw ApiError(400, "node must be an id string");
    }
    const auto i = s.graph().find(id.get<std::string>());
    if (!i) {
        throw ApiError(404, "unknown node " + id.get<std::string>());
    }
    return *i;
}

json Service::graph_json(const Session& s) const {
    const OntoGraph& g = s.graph();
    const ViewState& st = s.state;
    const auto layout = layout_view(*s.explorer, st, config_.layout);
    const auto& geo = layout.geometry;

    json nodes = json::array();
    for (std::size_t k = 0; k < layout.nodes.size(); ++k) {
        const auto v = layout.nodes[k];
        const auto& n = g.nodes[v];
        const auto& b = geo.boxes[k];
        const auto ratio = visible_ratio(g, st.visible, v);
        Markers m;
        if (const auto it = st.markers.find(v); it != st.markers.end()) {
            m = it->second;
        }
        nodes.push_back({{"id", n.id},
                         {"label", n.label},
                         {"kind", to_string(n.kind)},
                         {"level", layout.levels[k]},
                         {"box", {{"x", b.x}, {"y", b.y}, {"width", b.width}, {"height", b.height}}},
                         {"visible_descendants", ratio.visible},
                         {"total_descendants", ratio.total},
                         {"markers", {{"disjoint", m.disjoint}, {"properties", m.properties}}},
                         {"has_disjoint", !n.disjoint_with.empty()},
                         {"has_properties", !n.properties.empty()},
                         {"unsatisfiable", n.unsatisfiable},
                         {"selected", st.selection == v}});
    }

    json isa = json::array();
    std::size_t route = 0;
    for (const auto& [c, p] : layout.isa) {
        isa.push_back({{"from", g.nodes[c].id}, {"to", g.nodes[p].id}, {"route", route_json(geo.routes[route++])}});
    }
    json dashed = json::array();
    for (const auto& d : layout.dashed) {
        dashed.push_back(
            {{"from", g.nodes[d.from].id}, {"to", g.nodes[d.to].id}, {"route", route_json(geo.routes[route++])}});
    }
    const auto& prefixes = s.ontology().prefixes;
    json range = json::array();
    for (const auto& r : g.range_edges) {
        if (st.visible[r.domain_node] && st.visible[r.target]) {
            range.push_back({{"from", g.nodes[r.domain_node].id},
                             {"property", short_name(r.property, prefixes)},
                             {"to", g.nodes[r.target].id}});
        }
    }
    json sub = json::array();
    for (const auto& e : g.subproperty_edges) {
        sub.push_back({{"sub", short_name(e.sub, prefixes)}, {"sup", short_name(e.sup, prefixes)}});
    }
    json disjoint = json::array();
    for (const auto& d : g.disjoint_pairs) {
        if (st.visible[d.a] && st.visible[d.b]) {
            disjoint.push_back({{"a", g.nodes[d.a].id}, {"b", g.nodes[d.b].id}, {"inferred", d.inferred}});
        }
    }
    json bands = json::array();
    for (const auto& band : geo.bands) {
        bands.push_back({band.x0, band.x1});
    }
    json sliders = json::object();
    for (const auto& [v, p] : st.sliders) {
        sliders[g.nodes[v].id] = p;
    }
    return {{"session", s.id},
            {"nodes", std::move(nodes)},
            {"edges",
             {{"isa", std::move(isa)},
              {"dashed", std::move(dashed)},
              {"range", std::move(range)},
              {"subproperty", std::move(sub)},
              {"disjoint", std::move(disjoint)}}},
            {"geometry",
             {{"width", geo.width},
              {"height", geo.height},
              {"bands", std::move(bands)},
              {"initial_crossings", geo.initial_crossings},
              {"crossings", geo.crossings}}},
            {"view",
             {{"step", st.step_percent},
              {"policy", st.policy ? std::string(to_string(*st.policy)) : "auto"},
              {"zoom", st.zoom},
              {"window",
               {{"upper", to_functional(st.window.upper, &prefixes)},
                {"lower", to_functional(st.window.lower, &prefixes)}}},
              {"selection", st.selection ? json(g.nodes[*st.selection].id) : json(nullptr)},
              {"sliders", std::move(sliders)}}},
            {"counts", {{"visible", layout.nodes.size()}, {"total", g.size()}}}};
}

json Service::mutation(const Session& s, const Change& change) const {
    return {{"change", change_json(s.graph(), change)}, {"graph", graph_json(s)}};
}

json Service::graph(const std::string& session) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    return graph_json(*s);
}

namespace {

Direction direction_of(const json& request) {
    if (!request.contains("direction")) {
        return Direction::Descendants;
    }
    const auto& d = request.at("direction");
    const auto parsed = d.is_string() ? parse_direction(d.get<std::string>()) : std::nullopt;
    if (!parsed) {
        throw ApiError(400, "direction must be 'descendants' or 'ancestors'");
    }
    return *parsed;
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const ViewError& e) {
        throw ApiError(400, e.what());
    }
}

}  // namespace

json Service::expand(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto node = node_index(*s, require(request, "node"));
    const auto dir = direction_of(request);
    const auto change = guarded([&] { return s->explorer->expand(s->state, node, dir); });
    return mutation(*s, change);
}

json Service::collapse(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto node = node_index(*s, require(request, "node"));
    const auto dir = direction_of(request);
    const auto change = guarded([&] { return s->explorer->collapse(s->state, node, dir); });
    return mutation(*s, change);
}

json Service::slider(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto node = node_index(*s, require(request, "node"));
    const double percent = require_number(request, "percent");
    const auto change = guarded([&] { return s->explorer->set_slider(s->state, node, percent); });
    return mutation(*s, change);
}

json Service::policy(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto& p = require(request, "policy");
    if (!p.is_string()) {
        throw ApiError(400, "policy must be a string");
    }
    std::optional<Policy> policy;
    if (p.get<std::string>() != "auto") {
        policy = parse_policy(p.get<std::string>());
        if (!policy) {
            throw ApiError(400, "unknown policy " + p.get<std::string>());
        }
    }
    s->explorer->set_policy(s->state, policy);
    return mutation(*s, {});
}

json Service::step(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const double percent = require_number(request, "percent");
    guarded([&] {
        s->explorer->set_step(s->state, percent);
        return 0;
    });
    return mutation(*s, {});
}

json Service::detail_window(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto& prefixes = s->ontology().prefixes;
    auto read = [&](const char* key, ClassExpression fallback) {
        if (!request.is_object() || !request.contains(key) || request.at(key).is_null()) {
            return fallback;
        }
        if (!request.at(key).is_string()) {
            throw ApiError(400, std::string("field '") + key + "' must be a class expression string");
        }
        std::vector<ParseError> errors;
        auto ce = parse_class_expression(request.at(key).get<std::string>(), prefixes, &errors);
        if (!ce) {
            throw ApiError(400, std::string("cannot parse ") + key + ": " +
                                    (errors.empty() ? std::string("bad expression") : to_string(errors.front())));
        }
        return *ce;
    };
    const DetailWindow window{read("upper", ClassExpression::thing()), read("lower", ClassExpression::nothing())};
    auto explorer = explorer_for(*s->entry, window);
    ViewState next = rebind(s->state, s->graph(), explorer->graph());
    next.window = window;
    s->explorer = std::move(explorer);
    s->state = std::move(next);
    return mutation(*s, {});
}

json Service::summarize(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto& m = require(request, "method");
    if (!m.is_string()) {
        throw ApiError(400, "method must be a string");
    }
    SummaryRequest req;
    req.method = m.get<std::string>();
    RelevanceScore scores;
    if (req.method == "custom") {
        const auto& concepts = require(request, "concepts");
        if (!concepts.is_array() || concepts.empty()) {
            throw ApiError(400, "custom summary needs a non-empty 'concepts' list");
        }
        for (const auto& id : concepts) {
            req.custom.push_back(node_index(*s, id));
        }
    } else {
        if (!scorers_.contains(req.method)) {
            throw ApiError(400, "unknown summary method " + req.method);
        }
        const auto& n = require(request, "n");
        if (!n.is_number_integer() || n.get<long long>() < 1) {
            throw ApiError(400, "n must be an integer of at least 1");
        }
        req.n = n.get<std::size_t>();
        scores = scorers_.score(req.method, s->graph());
    }
    const auto summary = ontoview::summarize(s->graph(), req, scores);
    const auto change = s->explorer->show_only(s->state, summary);
    json out = mutation(*s, change);
    json ids = json::array();
    for (const auto v : summary) {
        ids.push_back(s->graph().nodes[v].id);
    }
    out["summary"] = std::move(ids);
    return out;
}

json Service::select(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto& node = require(request, "node");
    if (node.is_null()) {
        s->state.selection.reset();
    } else {
        s->state.selection = node_index(*s, node);
    }
    return mutation(*s, {});
}

json Service::markers(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto node = node_index(*s, require(request, "node"));
    Markers m = s->state.markers.count(node) ? s->state.markers.at(node) : Markers{};
    for (const auto* key : {"disjoint", "properties"}) {
        if (request.contains(key) && !request.at(key).is_boolean()) {
            throw ApiError(400, std::string("field '") + key + "' must be a boolean");
        }
    }
    m.disjoint = request.value("disjoint", m.disjoint);
    m.properties = request.value("properties", m.properties);
    if (m == Markers{}) {
        s->state.markers.erase(node);
    } else {
        s->state.markers[node] = m;
    }
    return mutation(*s, {});
}

json Service::move(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto node = node_index(*s, require(request, "node"));
    if (request.value("reset", false)) {
        s->state.position_overrides.erase(node);
    } else {
        s->state.position_overrides[node] = {require_number(request, "x"), require_number(request, "y")};
    }
    return mutation(*s, {});
}

json Service::zoom(const std::string& session, const json& request) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const double z = require_number(request, "zoom");
    if (!(z > 0.0)) {
        throw ApiError(400, "zoom must be positive");
    }
    s->state.zoom = z;
    return mutation(*s, {});
}

json Service::search(const std::string& session, const std::string& query) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    json results = json::array();
    for (const auto v : ontoview::search(s->graph(), query)) {
        const auto& n = s->graph().nodes[v];
        results.push_back(
            {{"id", n.id}, {"label", n.label}, {"kind", to_string(n.kind)}, {"visible", s->state.visible[v] != 0}});
    }
    return {{"query", query}, {"results", std::move(results)}};
}

json Service::node(const std::string& session, const std::string& node) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto v = node_index(*s, json(node));
    const OntoGraph& g = s->graph();
    const auto& n = g.nodes[v];
    const auto& prefixes = s->ontology().prefixes;
    auto ids = [&](const std::vector<std::size_t>& list) {
        json out = json::array();
        for (const auto i : list) {
            out.push_back(g.nodes[i].id);
        }
        return out;
    };
    auto names = [&](const std::vector<Iri>& list) {
        json out = json::array();
        for (const auto& i : list) {
            out.push_back(short_name(i, prefixes));
        }
        return out;
    };
    json properties = json::array();
    for (const auto& p : n.properties) {
        json range_labels = json::array();
        for (const auto r : p.range_nodes) {
            range_labels.push_back(g.nodes[r].label);
        }
        properties.push_back({{"iri", p.iri.str()},
                              {"name", short_name(p.iri, prefixes)},
                              {"kind", p.is_data_property ? "data" : "object"},
                              {"functional", p.functional},
                              {"transitive", p.transitive},
                              {"inverses", names(p.inverses)},
                              {"super_properties", names(p.super_properties)},
                              {"range", ids(p.range_nodes)},
                              {"range_labels", std::move(range_labels)},
                              {"datatypes", p.range_datatypes},
                              {"approximate", p.approximate}});
    }
    const auto ratio = visible_ratio(g, s->state.visible, v);
    return {{"id", n.id},
            {"label", n.label},
            {"kind", to_string(n.kind)},
            {"expression", to_functional(n.expression, &prefixes)},
            {"labels", n.labels},
            {"equivalents", n.equivalents},
            {"instances", names(n.instances)},
            {"properties", std::move(properties)},
            {"disjoint_with", ids(n.disjoint_with)},
            {"parents", ids(n.parents)},
            {"children", ids(n.children)},
            {"level", s->explorer->levels()[v]},
            {"visible", s->state.visible[v] != 0},
            {"visible_descendants", ratio.visible},
            {"total_descendants", ratio.total},
            {"unsatisfiable", n.unsatisfiable}};
}

std::string Service::export_svg(const std::string& session) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    const auto layout = layout_view(*s->explorer, s->state, config_.layout);
    return ontoview::export_svg(*s->explorer, s->state, layout, config_.layout);
}

std::string Service::export_dot(const std::string& session) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    return ontoview::export_dot(*s->explorer, layout_view(*s->explorer, s->state, config_.layout));
}

json Service::save_view(const std::string& session) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    return ontoview::save_view(s->state, s->graph());
}

json Service::load_view(const std::string& session, const json& document) {
    auto s = find(session);
    std::lock_guard lock(s->mutex);
    try {
        auto explorer = explorer_for(*s->entry, view_window(document));
        ViewState next = ontoview::load_view(document, explorer->graph());
        s->explorer = std::move(explorer);
        s->state = std::move(next);
    } catch (const ViewDocumentError& e) {
        throw ApiError(400, e.what(), e.unknown_ids.empty() ? json(nullptr) : json{{"unknown_ids", e.unknown_ids}});
    }
    return mutation(*s, {});
}

}  // namespace ontoview
