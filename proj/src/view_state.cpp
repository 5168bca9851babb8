#include "ontoview/view_state.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <tuple>

namespace ontoview {

std::string_view to_string(Policy policy) noexcept {
    switch (policy) {
    case Policy::Relevance:
        return "relevance";
    case Policy::GeneralFirst:
        return "general-first";
    case Policy::SpecificFirst:
        return "specific-first";
    }
    return "relevance";
}

std::string_view to_string(Direction direction) noexcept {
    return direction == Direction::Descendants ? "descendants" : "ancestors";
}

std::optional<Policy> parse_policy(std::string_view text) {
    for (const auto p : {Policy::Relevance, Policy::GeneralFirst, Policy::SpecificFirst}) {
        if (text == to_string(p)) {
            return p;
        }
    }
    return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view text) {
    for (const auto d : {Direction::Descendants, Direction::Ancestors}) {
        if (text == to_string(d)) {
            return d;
        }
    }
    return std::nullopt;
}

std::vector<DashedEdge> derive_dashed(const OntoGraph& graph, const std::vector<char>& visible) {
    std::vector<DashedEdge> out;
    std::vector<std::size_t> stamp(graph.size(), static_cast<std::size_t>(-1));
    for (std::size_t d = 0; d < graph.size(); ++d) {
        if (!visible[d]) {
            continue;
        }
        // Visible nodes reachable from d through hidden nodes only.
        std::vector<std::size_t> frontier;
        std::vector<std::size_t> stack(graph.parents(d).begin(), graph.parents(d).end());
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            if (stamp[v] == d) {
                continue;
            }
            stamp[v] = d;
            if (visible[v]) {
                frontier.push_back(v);
            } else {
                stack.insert(stack.end(), graph.parents(v).begin(), graph.parents(v).end());
            }
        }
        const auto parents = graph.parents(d);
        for (const auto a : frontier) {
            if (std::find(parents.begin(), parents.end(), a) != parents.end()) {
                continue;
            }
            const bool shadowed = std::any_of(frontier.begin(), frontier.end(),
                                              [&](std::size_t v) { return v != a && graph.is_descendant(v, a); });
            if (!shadowed) {
                out.push_back({d, a});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

VisibleRatio visible_ratio(const OntoGraph& graph, const std::vector<char>& visible, std::size_t node) {
    VisibleRatio r;
    for (const auto d : graph.descendants(node)) {
        r.visible += visible[d] ? 1 : 0;
    }
    r.total = graph.descendants(node).size();
    return r;
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::vector<std::size_t> search(const OntoGraph& graph, std::string_view query) {
    if (query.empty()) {
        return {};
    }
    const std::string q = lower(query);
    std::vector<std::pair<std::size_t, std::size_t>> hits;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        const auto& node = graph.nodes[i];
        std::size_t best = std::string::npos;
        auto consider = [&](const std::string& text) { best = std::min(best, lower(text).find(q)); };
        consider(node.label);
        std::for_each(node.labels.begin(), node.labels.end(), consider);
        std::for_each(node.equivalents.begin(), node.equivalents.end(), consider);
        if (best != std::string::npos) {
            hits.emplace_back(best, i);
        }
    }
    std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
        return std::tie(a.first, graph.nodes[a.second].label, a.second) <
               std::tie(b.first, graph.nodes[b.second].label, b.second);
    });
    std::vector<std::size_t> out;
    for (const auto& h : hits) {
        out.push_back(h.second);
    }
    return out;
}

Explorer::Explorer(std::shared_ptr<const OntoGraph> graph, RelevanceScore relevance)
    : graph_(std::move(graph)), levels_(assign_levels(*graph_)), relevance_(std::move(relevance)) {
    if (relevance_.values.size() != graph_->size()) {
        throw std::invalid_argument("relevance scores do not match the graph");
    }
}

ViewState Explorer::initial_state() const {
    ViewState s;
    s.visible.assign(graph_->size(), 0);
    s.visible[OntoGraph::kThing] = 1;
    for (const auto c : graph_->children(OntoGraph::kThing)) {
        s.visible[c] = 1;
    }
    return s;
}

Policy Explorer::policy_for(const ViewState& state, std::size_t node) const {
    if (state.policy) {
        return *state.policy;
    }
    return node == OntoGraph::kThing ? Policy::Relevance : Policy::GeneralFirst;
}

std::vector<std::size_t> Explorer::policy_order(std::size_t node, Direction direction, Policy policy) const {
    const auto span = direction == Direction::Descendants ? graph_->descendants(node) : graph_->ancestors(node);
    std::vector<std::size_t> out(span.begin(), span.end());
    auto score = [&](std::size_t v) {
        return relevance_.scored[v] ? relevance_.values[v] : -std::numeric_limits<double>::infinity();
    };
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        // Node indices follow label order, so the index is the label tie-break.
        switch (policy) {
        case Policy::Relevance:
            return std::make_tuple(-score(a), levels_[a], a) < std::make_tuple(-score(b), levels_[b], b);
        case Policy::GeneralFirst:
            return std::make_tuple(levels_[a], -score(a), a) < std::make_tuple(levels_[b], -score(b), b);
        case Policy::SpecificFirst:
            break;
        }
        return std::make_tuple(levels_[b], -score(a), a) < std::make_tuple(levels_[a], -score(b), b);
    });
    return out;
}

std::size_t Explorer::step_size(const ViewState& state, std::size_t node, Direction direction) const {
    const auto total = static_cast<double>(direction == Direction::Descendants ? graph_->descendants(node).size()
                                                                               : graph_->ancestors(node).size());
    const auto k = static_cast<std::size_t>(std::ceil(state.step_percent / 100.0 * total - 1e-9));
    return std::max<std::size_t>(1, k);
}

void Explorer::require_visible(const ViewState& state, std::size_t node) const {
    if (node >= graph_->size()) {
        throw ViewError("unknown node");
    }
    if (!state.visible[node]) {
        throw ViewError("node " + graph_->nodes[node].id + " is not visible");
    }
}

Change Explorer::apply(ViewState& state, const std::vector<char>& next) const {
    Change c;
    for (std::size_t i = 0; i < next.size(); ++i) {
        const bool now = next[i] || i == OntoGraph::kThing;
        if (now && !state.visible[i]) {
            c.revealed.push_back(i);
        } else if (!now && state.visible[i]) {
            c.hidden.push_back(i);
        }
        state.visible[i] = now;
    }
    return c;
}

Change Explorer::expand(ViewState& state, std::size_t node, Direction direction) const {
    require_visible(state, node);
    const std::size_t k = step_size(state, node, direction);
    auto next = state.visible;
    std::size_t taken = 0;
    for (const auto v : policy_order(node, direction, policy_for(state, node))) {
        if (taken == k) {
            break;
        }
        if (!next[v]) {
            next[v] = 1;
            ++taken;
        }
    }
    Change c = apply(state, next);
    state.sliders.erase(node);
    if (!c.noop()) {
        state.last_expansion = Expansion{node, direction, c.revealed};
    }
    return c;
}

Change Explorer::collapse(ViewState& state, std::size_t node, Direction direction) const {
    require_visible(state, node);
    auto next = state.visible;
    const auto& last = state.last_expansion;
    if (last && last->node == node && last->direction == direction &&
        std::all_of(last->revealed.begin(), last->revealed.end(), [&](std::size_t v) { return next[v] != 0; })) {
        for (const auto v : last->revealed) {
            next[v] = 0;
        }
    } else {
        const std::size_t k = step_size(state, node, direction);
        auto order = policy_order(node, direction, policy_for(state, node));
        std::reverse(order.begin(), order.end());
        std::size_t taken = 0;
        for (const auto v : order) {
            if (taken == k) {
                break;
            }
            if (!next[v] || v == OntoGraph::kThing) {
                continue;
            }
            if (direction == Direction::Ancestors) {
                // Keep ancestors that still lead to other visible nodes.
                const auto ds = graph_->descendants(v);
                const bool other = std::any_of(ds.begin(), ds.end(), [&](std::size_t d) {
                    return state.visible[d] && d != node && !graph_->is_descendant(d, node) &&
                           !graph_->is_descendant(node, d);
                });
                if (other) {
                    continue;
                }
            }
            next[v] = 0;
            ++taken;
        }
    }
    Change c = apply(state, next);
    state.sliders.erase(node);
    state.last_expansion.reset();
    return c;
}

Change Explorer::set_slider(ViewState& state, std::size_t node, double percent) const {
    require_visible(state, node);
    if (!(percent >= 0.0 && percent <= 100.0)) {
        throw ViewError("slider percent must lie in [0, 100]");
    }
    const auto order = policy_order(node, Direction::Descendants, policy_for(state, node));
    const auto count = static_cast<std::size_t>(std::lround(percent / 100.0 * static_cast<double>(order.size())));
    auto next = state.visible;
    for (std::size_t k = 0; k < order.size(); ++k) {
        next[order[k]] = k < count ? 1 : 0;
    }
    Change c = apply(state, next);
    state.sliders[node] = percent;
    state.last_expansion.reset();
    return c;
}

Change Explorer::show_only(ViewState& state, const std::vector<std::size_t>& nodes) const {
    std::vector<char> next(graph_->size(), 0);
    for (const auto v : nodes) {
        if (v >= graph_->size()) {
            throw ViewError("unknown node");
        }
        next[v] = 1;
    }
    Change c = apply(state, next);
    state.sliders.clear();
    state.last_expansion.reset();
    return c;
}

void Explorer::set_step(ViewState& state, double percent) const {
    if (!(percent > 0.0 && percent <= 100.0)) {
        throw ViewError("step percent must lie in (0, 100]");
    }
    state.step_percent = percent;
    state.last_expansion.reset();
}

void Explorer::set_policy(ViewState& state, std::optional<Policy> policy) const {
    state.policy = policy;
    state.last_expansion.reset();
}

ViewState rebind(const ViewState& state, const OntoGraph& from, const OntoGraph& to) {
    ViewState out = state;
    auto map = [&](std::size_t i) { return to.find(from.nodes[i].id); };
    out.visible.assign(to.size(), 0);
    out.visible[OntoGraph::kThing] = 1;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (const auto j = map(i); j && state.visible[i]) {
            out.visible[*j] = 1;
        }
    }
    auto remap = [&](const auto& m) {
        std::decay_t<decltype(m)> r;
        for (const auto& [k, v] : m) {
            if (const auto j = map(k)) {
                r.emplace(*j, v);
            }
        }
        return r;
    };
    out.position_overrides = remap(state.position_overrides);
    out.markers = remap(state.markers);
    out.sliders = remap(state.sliders);
    out.selection.reset();
    if (state.selection) {
        if (const auto j = map(*state.selection)) {
            out.selection = *j;
        }
    }
    out.last_expansion.reset();
    return out;
}

}  // namespace ontoview
