#include "ontoview/layout.hpp"

#include <algorithm>
#include <numeric>

namespace ontoview {

std::vector<std::size_t> assign_levels(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    std::vector<std::vector<std::size_t>> children(n);
    std::vector<std::size_t> pending(n, 0);
    for (const auto& [c, p] : edges) {
        children[p].push_back(c);
        ++pending[c];
    }
    std::vector<std::size_t> level(n, 0);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (pending[i] == 0) {
            queue.push_back(i);
        }
    }
    for (std::size_t k = 0; k < queue.size(); ++k) {
        const std::size_t v = queue[k];
        for (const auto c : children[v]) {
            level[c] = std::max(level[c], level[v] + 1);
            if (--pending[c] == 0) {
                queue.push_back(c);
            }
        }
    }
    if (queue.size() != n) {
        throw CycleError("isA edges contain a cycle");
    }
    return level;
}

std::vector<std::size_t> assign_levels(const OntoGraph& graph) {
    const auto edges = graph.isa_edges();
    return assign_levels(graph.size(), edges);
}

LayeredGraph make_layered(std::span<const LayerNode> nodes, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    LayeredGraph g;
    g.real_count = nodes.size();
    std::size_t depth = 0;
    for (const auto& n : nodes) {
        g.level.push_back(n.level);
        g.key.emplace_back(n.label, n.id);
        depth = std::max(depth, n.level);
    }
    for (const auto& [child, parent] : edges) {
        if (g.level[child] <= g.level[parent]) {
            throw std::invalid_argument("edge does not point to a lower level");
        }
        std::vector<std::size_t> chain{child};
        for (std::size_t l = g.level[child] - 1; l > g.level[parent]; --l) {
            const std::size_t v = g.level.size();
            g.level.push_back(l);
            g.key.push_back(g.key[child]);
            chain.push_back(v);
        }
        chain.push_back(parent);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            g.segments.emplace_back(chain[k + 1], chain[k]);
        }
        g.chains.push_back(std::move(chain));
    }
    g.layers.assign(depth + 1, {});
    for (std::size_t v = 0; v < g.size(); ++v) {
        g.layers[g.level[v]].push_back(v);
    }
    return g;
}

namespace {

/// Inversions among `values`, counted with a Fenwick tree.
std::size_t inversions(const std::vector<std::size_t>& values, std::size_t bound) {
    std::vector<std::size_t> tree(bound + 1, 0);
    std::size_t seen = 0;
    std::size_t out = 0;
    for (const auto v : values) {
        // Elements already inserted with a value strictly greater than v.
        std::size_t not_greater = 0;
        for (std::size_t i = v + 1; i > 0; i -= i & (~i + 1)) {
            not_greater += tree[i];
        }
        out += seen - not_greater;
        for (std::size_t i = v + 1; i <= bound; i += i & (~i + 1)) {
            ++tree[i];
        }
        ++seen;
    }
    return out;
}

std::vector<std::size_t> positions(const LayeredGraph& g, const std::vector<std::vector<std::size_t>>& layers) {
    std::vector<std::size_t> pos(g.size(), 0);
    for (const auto& layer : layers) {
        for (std::size_t k = 0; k < layer.size(); ++k) {
            pos[layer[k]] = k;
        }
    }
    return pos;
}

}  // namespace

std::size_t count_crossings(const LayeredGraph& g, const std::vector<std::vector<std::size_t>>& layers) {
    const auto pos = positions(g, layers);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_level(layers.size());
    for (const auto& [u, v] : g.segments) {
        by_level[g.level[u]].emplace_back(pos[u], pos[v]);
    }
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
        auto& segs = by_level[l];
        std::sort(segs.begin(), segs.end());
        std::vector<std::size_t> lower;
        lower.reserve(segs.size());
        for (const auto& s : segs) {
            lower.push_back(s.second);
        }
        total += inversions(lower, layers[l + 1].size());
    }
    return total;
}

OrderResult order_levels(const LayeredGraph& g, std::size_t sweeps) {
    std::vector<std::vector<std::size_t>> up(g.size());
    std::vector<std::vector<std::size_t>> down(g.size());
    for (const auto& [u, v] : g.segments) {
        down[u].push_back(v);
        up[v].push_back(u);
    }
    OrderResult result;
    result.layers = g.layers;
    result.initial_crossings = count_crossings(g, g.layers);
    result.crossings = result.initial_crossings;
    result.history.push_back(result.crossings);

    auto current = g.layers;
    auto reorder = [&](std::size_t l, const std::vector<std::vector<std::size_t>>& nbrs) {
        const auto pos = positions(g, current);
        std::vector<std::pair<double, std::size_t>> keyed;
        keyed.reserve(current[l].size());
        for (const auto v : current[l]) {
            double bary = static_cast<double>(pos[v]);
            if (!nbrs[v].empty()) {
                double sum = 0;
                for (const auto u : nbrs[v]) {
                    sum += static_cast<double>(pos[u]);
                }
                bary = sum / static_cast<double>(nbrs[v].size());
            }
            keyed.emplace_back(bary, v);
        }
        std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) {
                return a.first < b.first;
            }
            if (g.key[a.second] != g.key[b.second]) {
                return g.key[a.second] < g.key[b.second];
            }
            return a.second < b.second;
        });
        for (std::size_t k = 0; k < keyed.size(); ++k) {
            current[l][k] = keyed[k].second;
        }
    };
    for (std::size_t round = 0; round < sweeps; ++round) {
        for (std::size_t l = 1; l < current.size(); ++l) {
            reorder(l, up);
        }
        for (std::size_t l = current.size(); l-- > 1;) {
            reorder(l - 1, down);
        }
        const std::size_t c = count_crossings(g, current);
        if (c < result.crossings) {
            result.crossings = c;
            result.layers = current;
        }
        result.history.push_back(result.crossings);
    }
    return result;
}

double node_width(std::string_view label, const LayoutOptions& options) {
    return static_cast<double>(label.size()) * options.char_width + options.padding;
}

Geometry assign_coordinates(const LayeredGraph& g, const OrderResult& order, std::span<const LayerNode> nodes,
                            std::span<const double> extra_height, const LayoutOptions& options) {
    Geometry geo;
    geo.initial_crossings = order.initial_crossings;
    geo.crossings = order.crossings;
    const std::size_t count = g.size();
    std::vector<double> width(count, 0.0);
    std::vector<double> height(count, options.node_gap);
    for (std::size_t v = 0; v < g.real_count; ++v) {
        width[v] = node_width(nodes[v].label, options);
        height[v] = options.node_height + (v < extra_height.size() ? extra_height[v] : 0.0);
    }

    // Bands.
    double x = options.margin;
    for (const auto& layer : order.layers) {
        double w = options.min_band;
        for (const auto v : layer) {
            w = std::max(w, width[v]);
        }
        geo.bands.push_back({x, x + w});
        x += w + options.level_gap;
    }

    // Vertical placement, level by level.
    std::vector<std::vector<std::size_t>> up(count);
    for (const auto& [u, v] : g.segments) {
        up[v].push_back(u);
    }
    std::vector<double> y(count, 0.0);
    double bottom = options.margin;
    for (const auto& layer : order.layers) {
        double next = options.margin;
        for (const auto v : layer) {
            double want = next;
            if (!up[v].empty()) {
                double sum = 0;
                for (const auto u : up[v]) {
                    sum += y[u] + height[u] / 2.0;
                }
                want = std::max(next, sum / static_cast<double>(up[v].size()) - height[v] / 2.0);
            }
            y[v] = want;
            next = want + height[v] + options.node_gap;
        }
        bottom = std::max(bottom, next);
    }

    geo.boxes.resize(g.real_count);
    for (std::size_t v = 0; v < g.real_count; ++v) {
        const auto& band = geo.bands[g.level[v]];
        geo.boxes[v] = {band.x0, y[v], width[v], height[v]};
    }
    for (const auto& chain : g.chains) {
        std::vector<Point> route;
        const std::size_t child = chain.front();
        const std::size_t parent = chain.back();
        route.push_back({geo.boxes[child].x, y[child] + options.node_height / 2.0});
        for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
            const auto& band = geo.bands[g.level[chain[k]]];
            route.push_back({(band.x0 + band.x1) / 2.0, y[chain[k]] + height[chain[k]] / 2.0});
        }
        route.push_back({geo.boxes[parent].x + geo.boxes[parent].width, y[parent] + options.node_height / 2.0});
        geo.routes.push_back(std::move(route));
    }
    geo.width = x - options.level_gap + options.margin;
    geo.height = bottom + options.margin;
    return geo;
}

Geometry compute_layout(std::span<const LayerNode> nodes, std::span<const std::pair<std::size_t, std::size_t>> edges,
                        std::span<const double> extra_height, const LayoutOptions& options) {
    const LayeredGraph g = make_layered(nodes, edges);
    const OrderResult order = order_levels(g, options.sweeps);
    return assign_coordinates(g, order, nodes, extra_height, options);
}

}  // namespace ontoview
