#include "ontoview/view_document.hpp"

#include "ontoview/functional_syntax.hpp"

namespace ontoview {

using nlohmann::json;

namespace {

const char* const kFormat = "ontoview-view";

json id_list(const OntoGraph& g, const std::vector<std::size_t>& nodes) {
    json out = json::array();
    for (const auto v : nodes) {
        out.push_back(g.nodes[v].id);
    }
    return out;
}

ClassExpression read_expression(const json& j) {
    if (!j.is_string()) {
        throw ViewDocumentError("window bounds must be class expression strings");
    }
    std::vector<ParseError> errors;
    auto ce = parse_class_expression(j.get<std::string>(), PrefixTable::with_standard_prefixes(), &errors);
    if (!ce) {
        throw ViewDocumentError("bad window expression " + j.get<std::string>() +
                                (errors.empty() ? "" : ": " + to_string(errors.front())));
    }
    return *ce;
}

void check_header(const json& doc) {
    if (!doc.is_object() || doc.value("format", "") != kFormat) {
        throw ViewDocumentError("not a view document");
    }
    const auto version = doc.find("version");
    if (version == doc.end() || !version->is_number_integer()) {
        throw ViewDocumentError("view document has no version");
    }
    if (version->get<int>() != kViewFormatVersion) {
        throw ViewDocumentError("unsupported view document version " + std::to_string(version->get<int>()) +
                                " (expected " + std::to_string(kViewFormatVersion) + ")");
    }
}

/// Resolves ids, collecting every unknown one before failing.
class Resolver {
public:
    explicit Resolver(const OntoGraph& g) : g_(g) {}

    std::size_t operator()(const json& id) {
        if (!id.is_string()) {
            throw ViewDocumentError("node references must be id strings");
        }
        const auto s = id.get<std::string>();
        if (const auto i = g_.find(s)) {
            return *i;
        }
        unknown_.push_back(s);
        return OntoGraph::kThing;
    }

    void finish() const {
        if (unknown_.empty()) {
            return;
        }
        std::string msg = "view document names unknown nodes:";
        for (const auto& id : unknown_) {
            msg += " " + id;
        }
        throw ViewDocumentError(msg, unknown_);
    }

private:
    const OntoGraph& g_;
    std::vector<std::string> unknown_;
};

}  // namespace

json save_view(const ViewState& state, const OntoGraph& graph) {
    json doc;
    doc["format"] = kFormat;
    doc["version"] = kViewFormatVersion;
    std::vector<std::size_t> visible;
    for (std::size_t i = 0; i < state.visible.size(); ++i) {
        if (state.visible[i]) {
            visible.push_back(i);
        }
    }
    doc["visible"] = id_list(graph, visible);
    doc["step"] = state.step_percent;
    doc["policy"] = state.policy ? std::string(to_string(*state.policy)) : "auto";
    doc["zoom"] = state.zoom;
    doc["window"] = {{"upper", to_functional(state.window.upper)}, {"lower", to_functional(state.window.lower)}};
    json positions = json::object();
    for (const auto& [v, p] : state.position_overrides) {
        positions[graph.nodes[v].id] = {p.x, p.y};
    }
    doc["positions"] = positions;
    doc["selection"] = state.selection ? json(graph.nodes[*state.selection].id) : json(nullptr);
    json markers = json::object();
    for (const auto& [v, m] : state.markers) {
        markers[graph.nodes[v].id] = {{"disjoint", m.disjoint}, {"properties", m.properties}};
    }
    doc["markers"] = markers;
    json sliders = json::object();
    for (const auto& [v, p] : state.sliders) {
        sliders[graph.nodes[v].id] = p;
    }
    doc["sliders"] = sliders;
    if (state.last_expansion) {
        const auto& e = *state.last_expansion;
        doc["last_expansion"] = {{"node", graph.nodes[e.node].id},
                                 {"direction", std::string(to_string(e.direction))},
                                 {"revealed", id_list(graph, e.revealed)}};
    } else {
        doc["last_expansion"] = nullptr;
    }
    return doc;
}

DetailWindow view_window(const json& doc) {
    check_header(doc);
    DetailWindow w;
    if (const auto it = doc.find("window"); it != doc.end()) {
        if (!it->is_object()) {
            throw ViewDocumentError("window must be an object");
        }
        if (it->contains("upper")) {
            w.upper = read_expression(it->at("upper"));
        }
        if (it->contains("lower")) {
            w.lower = read_expression(it->at("lower"));
        }
    }
    return w;
}

ViewState load_view(const json& doc, const OntoGraph& graph) {
    ViewState s;
    s.window = view_window(doc);
    Resolver resolve(graph);
    try {
        s.visible.assign(graph.size(), 0);
        s.visible[OntoGraph::kThing] = 1;
        for (const auto& id : doc.at("visible")) {
            s.visible[resolve(id)] = 1;
        }
        s.step_percent = doc.value("step", s.step_percent);
        if (!(s.step_percent > 0.0 && s.step_percent <= 100.0)) {
            throw ViewDocumentError("step must lie in (0, 100]");
        }
        const std::string policy = doc.value("policy", "auto");
        if (policy != "auto") {
            s.policy = parse_policy(policy);
            if (!s.policy) {
                throw ViewDocumentError("unknown policy " + policy);
            }
        }
        s.zoom = doc.value("zoom", s.zoom);
        if (!(s.zoom > 0.0)) {
            throw ViewDocumentError("zoom must be positive");
        }
        const json positions = doc.value("positions", json::object());
        for (const auto& [id, p] : positions.items()) {
            s.position_overrides[resolve(id)] = {p.at(0).get<double>(), p.at(1).get<double>()};
        }
        if (const auto it = doc.find("selection"); it != doc.end() && !it->is_null()) {
            s.selection = resolve(*it);
        }
        const json markers = doc.value("markers", json::object());
        for (const auto& [id, m] : markers.items()) {
            s.markers[resolve(id)] = {m.value("disjoint", false), m.value("properties", false)};
        }
        const json sliders = doc.value("sliders", json::object());
        for (const auto& [id, p] : sliders.items()) {
            s.sliders[resolve(id)] = p.get<double>();
        }
        if (const auto it = doc.find("last_expansion"); it != doc.end() && !it->is_null()) {
            Expansion e;
            e.node = resolve(it->at("node"));
            const auto dir = parse_direction(it->at("direction").get<std::string>());
            if (!dir) {
                throw ViewDocumentError("unknown direction");
            }
            e.direction = *dir;
            for (const auto& id : it->at("revealed")) {
                e.revealed.push_back(resolve(id));
            }
            s.last_expansion = std::move(e);
        }
    } catch (const json::exception& e) {
        throw ViewDocumentError(std::string("malformed view document: ") + e.what());
    }
    resolve.finish();
    return s;
}

}  // namespace ontoview
