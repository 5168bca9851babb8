#include "view_fuzz.hpp"

#include <optional>
#include <random>

namespace ontoview::testing {

std::vector<std::string> view_violations(const Document& doc, const Explorer& explorer, const ViewState& s) {
    const auto& g = explorer.graph();
    std::vector<std::string> out;
    if (!s.visible[OntoGraph::kThing]) {
        out.push_back("Thing hidden");
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (!s.visible[v]) {
            continue;
        }
        const auto r = visible_ratio(g, s.visible, v);
        std::size_t expected = 0;
        for (std::size_t d = 0; d < g.size(); ++d) {
            expected += (s.visible[d] && g.is_descendant(d, v)) ? 1 : 0;
        }
        if (r.visible != expected || r.total != g.nodes[v].total_descendants) {
            out.push_back("counter of " + g.nodes[v].label + " is " + std::to_string(r.visible) + "/" +
                          std::to_string(r.total) + ", expected " + std::to_string(expected) + "/" +
                          std::to_string(g.nodes[v].total_descendants));
        }
    }
    for (const auto& d : derive_dashed(g, s.visible)) {
        if (!doc.reasoner().is_subsumed(g.expression(d.from), g.expression(d.to)) || !g.is_descendant(d.from, d.to)) {
            out.push_back("dashed edge " + g.nodes[d.from].label + " -> " + g.nodes[d.to].label + " not entailed");
        }
    }
    return out;
}

FuzzReport fuzz_view(const Document& doc, const Explorer& explorer, std::uint64_t seed, std::size_t steps) {
    const auto& g = explorer.graph();
    std::mt19937_64 rng(seed);
    FuzzReport report;
    auto note = [&](std::string message) {
        ++report.violations;
        if (report.messages.size() < 5) {
            report.messages.push_back("step " + std::to_string(report.steps) + ": " + std::move(message));
        }
    };
    auto s = explorer.initial_state();
    auto pick_visible = [&]() {
        std::vector<std::size_t> vis;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (s.visible[i]) {
                vis.push_back(i);
            }
        }
        return vis[std::uniform_int_distribution<std::size_t>(0, vis.size() - 1)(rng)];
    };
    const std::vector<std::optional<Policy>> policies{std::nullopt, Policy::Relevance, Policy::GeneralFirst,
                                                      Policy::SpecificFirst};
    const auto scores = pagerank(g, false);
    for (; report.steps < steps; ++report.steps) {
        if (!s.visible[OntoGraph::kThing]) {
            break;
        }
        const auto node = pick_visible();
        const auto dir = std::bernoulli_distribution(0.7)(rng) ? Direction::Descendants : Direction::Ancestors;
        switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
        case 0:
        case 1:
            explorer.expand(s, node, dir);
            break;
        case 2:
            explorer.collapse(s, node, dir);
            break;
        case 3: {
            const auto before = s.visible;
            if (!explorer.expand(s, node, dir).noop()) {
                explorer.collapse(s, node, dir);
                if (s.visible != before) {
                    note("collapse did not undo expand of " + g.nodes[node].label);
                }
            }
            break;
        }
        case 4:
            explorer.set_slider(s, node, std::uniform_real_distribution<double>(0, 100)(rng));
            break;
        case 5:
            explorer.set_step(s, std::uniform_int_distribution<int>(1, 100)(rng));
            break;
        case 6:
            explorer.set_policy(s, policies[std::uniform_int_distribution<std::size_t>(0, 3)(rng)]);
            break;
        default: {
            const auto n = std::uniform_int_distribution<std::size_t>(1, g.size())(rng);
            explorer.show_only(s, summarize(g, {"rdfrank", n, {}}, scores));
            break;
        }
        }
        for (auto& m : view_violations(doc, explorer, s)) {
            note(std::move(m));
        }
    }
    return report;
}

}  // namespace ontoview::testing
