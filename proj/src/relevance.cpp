#include "ontoview/relevance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ontoview {

RelevanceScore pagerank(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges, bool directed,
                        const PageRankOptions& options) {
    if (n == 0) {
        return {};
    }
    if (!(options.damping > 0.0 && options.damping < 1.0)) {
        throw std::invalid_argument("damping must lie in (0, 1)");
    }
    std::vector<std::vector<std::size_t>> incoming(n);
    std::vector<double> outdeg(n, 0.0);
    for (const auto& [from, to] : edges) {
        incoming[to].push_back(from);
        outdeg[from] += 1.0;
        if (!directed) {
            incoming[from].push_back(to);
            outdeg[to] += 1.0;
        }
    }
    const double d = options.damping;
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> rank(n, inv_n);
    std::vector<double> next(n, 0.0);
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (outdeg[v] == 0.0) {
                dangling += rank[v];
            }
        }
        const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (const auto u : incoming[v]) {
                sum += rank[u] / outdeg[u];
            }
            next[v] = base + d * sum;
            delta = std::max(delta, std::abs(next[v] - rank[v]));
        }
        rank.swap(next);
        if (delta < options.epsilon) {
            break;
        }
    }
    const double total = std::accumulate(rank.begin(), rank.end(), 0.0);
    for (auto& r : rank) {
        r /= total;
    }
    return {std::move(rank), std::vector<char>(n, 1)};
}

RelevanceScore pagerank(const OntoGraph& graph, bool directed, const PageRankOptions& options) {
    const auto edges = graph.isa_edges();
    return pagerank(graph.size(), edges, directed, options);
}

std::size_t label_tokens(std::string_view label) {
    std::size_t tokens = 0;
    bool in_token = false;
    for (std::size_t i = 0; i < label.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(label[i]);
        if (c == '_' || c == '-' || std::isspace(c)) {
            in_token = false;
            continue;
        }
        bool boundary = !in_token;
        if (in_token && i > 0) {
            const unsigned char p = static_cast<unsigned char>(label[i - 1]);
            const bool next_lower = i + 1 < label.size() && std::islower(static_cast<unsigned char>(label[i + 1]));
            boundary = (std::islower(p) && std::isupper(c)) || (std::isdigit(p) != 0) != (std::isdigit(c) != 0) ||
                       (std::isupper(p) && std::isupper(c) && next_lower);
        }
        if (boundary) {
            ++tokens;
        }
        in_token = true;
    }
    return std::max<std::size_t>(tokens, 1);
}

RelevanceScore kce_scores(const OntoGraph& graph, const KceWeights& weights) {
    const std::size_t n = graph.size();
    RelevanceScore out{std::vector<double>(n, 0.0), std::vector<char>(n, 0)};
    std::vector<char> leaf(n, 0);
    std::size_t leaves = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (graph.nodes[i].unsatisfiable) {
            continue;
        }
        const auto& cs = graph.nodes[i].children;
        leaf[i] = std::all_of(cs.begin(), cs.end(), [&](std::size_t c) { return graph.nodes[c].unsatisfiable; });
        leaves += leaf[i];
    }
    std::vector<double> density(n, 0.0);
    double max_density = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& node = graph.nodes[i];
        out.scored[i] = i != OntoGraph::kThing && node.kind != NodeKind::Anonymous && !node.unsatisfiable;
        if (!out.scored[i]) {
            continue;
        }
        std::size_t children = 0;
        for (const auto c : node.children) {
            children += graph.nodes[c].unsatisfiable ? 0 : 1;
        }
        density[i] = static_cast<double>(children + node.properties.size() + node.instances.size());
        max_density = std::max(max_density, density[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.scored[i]) {
            continue;
        }
        std::size_t covered = leaf[i];
        for (const auto d : graph.descendants(i)) {
            covered += leaf[d];
        }
        const double dens = max_density > 0.0 ? density[i] / max_density : 0.0;
        const double cov = leaves > 0 ? static_cast<double>(covered) / static_cast<double>(leaves) : 0.0;
        const double simple = 1.0 / static_cast<double>(label_tokens(graph.nodes[i].label));
        out.values[i] = weights.density * dens + weights.coverage * cov + weights.simplicity * simple;
    }
    return out;
}

std::vector<std::size_t> summarize(const OntoGraph& graph, const SummaryRequest& request, const RelevanceScore& scores) {
    std::vector<std::size_t> out;
    if (request.method == "custom") {
        if (request.custom.empty()) {
            throw std::invalid_argument("custom summary needs at least one concept");
        }
        out = request.custom;
    } else if (request.n == 0) {
        throw std::invalid_argument("summary size must be at least 1");
    } else if (request.n >= graph.size()) {
        out.resize(graph.size());
        std::iota(out.begin(), out.end(), std::size_t{0});
    } else {
        std::vector<std::size_t> ranked;
        for (std::size_t i = 0; i < graph.size(); ++i) {
            if (i < scores.scored.size() && scores.scored[i]) {
                ranked.push_back(i);
            }
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](std::size_t a, std::size_t b) { return scores.values[a] > scores.values[b]; });
        if (request.n >= ranked.size()) {
            out = ranked;
        } else {
            const double cut = scores.values[ranked[request.n - 1]];
            const double tol = 1e-9 * std::max(std::abs(cut), 1e-300);
            for (const auto i : ranked) {
                if (scores.values[i] >= cut - tol) {
                    out.push_back(i);
                }
            }
        }
    }
    out.push_back(OntoGraph::kThing);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ScorerRegistry::ScorerRegistry(const RelevanceConfig& config) {
    const auto pr = config.pagerank;
    const auto kce = config.kce;
    add("pagerank", [pr](const OntoGraph& g) { return pagerank(g, true, pr); });
    add("rdfrank", [pr](const OntoGraph& g) { return pagerank(g, false, pr); });
    add("kce", [kce](const OntoGraph& g) { return kce_scores(g, kce); });
}

void ScorerRegistry::add(std::string name, Scorer scorer) {
    scorers_[std::move(name)] = std::move(scorer);
}

RelevanceScore ScorerRegistry::score(const std::string& name, const OntoGraph& graph) const {
    auto it = scorers_.find(name);
    if (it == scorers_.end()) {
        throw std::invalid_argument("unknown relevance method: " + name);
    }
    return it->second(graph);
}

std::vector<std::string> ScorerRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : scorers_) {
        out.push_back(name);
    }
    return out;
}

}  // namespace ontoview
