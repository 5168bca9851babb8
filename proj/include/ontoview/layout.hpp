#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ontoview/onto_graph.hpp"

namespace ontoview {

class CycleError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Longest-path levels over `n` nodes and (child, parent) edges: roots get 0,
/// every other node 1 + the maximum level of its parents. Throws CycleError.
std::vector<std::size_t> assign_levels(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
std::vector<std::size_t> assign_levels(const OntoGraph& graph);

/**
 * Proper layered graph: every edge spans exactly one level, long edges are
 * split by virtual nodes. Node k < real_count is input node k.
 */
struct LayeredGraph {
    std::size_t real_count = 0;
    std::vector<std::size_t> level;
    /// Tie-break key per node (label, id); virtual nodes inherit it from the edge's child.
    std::vector<std::pair<std::string, std::string>> key;
    /// Segments (upper, lower) between adjacent levels; upper is on level l, lower on l + 1.
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    /// For each input edge, the chain child, virtual..., parent.
    std::vector<std::vector<std::size_t>> chains;
    /// Initial arrangement: nodes of each level in index order.
    std::vector<std::vector<std::size_t>> layers;

    std::size_t size() const noexcept { return level.size(); }
    bool is_virtual(std::size_t v) const noexcept { return v >= real_count; }
};

struct LayerNode {
    std::size_t level = 0;
    std::string label;
    std::string id;
};

/// `edges` are (child, parent) with level(child) > level(parent).
LayeredGraph make_layered(std::span<const LayerNode> nodes, std::span<const std::pair<std::size_t, std::size_t>> edges);

/// Segment crossings between adjacent layers of `layers`.
std::size_t count_crossings(const LayeredGraph& g, const std::vector<std::vector<std::size_t>>& layers);

struct OrderResult {
    std::vector<std::vector<std::size_t>> layers;
    std::size_t initial_crossings = 0;
    std::size_t crossings = 0;
    /// Crossings of the accepted ordering after each round, starting with the initial one.
    std::vector<std::size_t> history;
};

/// Barycenter sweeps (down then up per round), ties by label then id; keeps the best ordering seen.
OrderResult order_levels(const LayeredGraph& g, std::size_t sweeps = 4);

struct LayoutOptions {
    double char_width = 7.0;
    double padding = 16.0;
    double node_height = 28.0;
    double property_row = 14.0;
    double level_gap = 60.0;
    double node_gap = 12.0;
    double margin = 20.0;
    double min_band = 40.0;
    std::size_t sweeps = 4;
};

struct Point {
    double x = 0;
    double y = 0;
    bool operator==(const Point&) const = default;
};

struct Box {
    double x = 0;
    double y = 0;
    double width = 0;
    double height = 0;
    bool operator==(const Box&) const = default;
};

struct Band {
    double x0 = 0;
    double x1 = 0;
    bool operator==(const Band&) const = default;
};

/// Label width in pixels; monotone in label length.
double node_width(std::string_view label, const LayoutOptions& options = {});

struct Geometry {
    /// Per input node.
    std::vector<Box> boxes;
    /// Per level 0..max.
    std::vector<Band> bands;
    /// Per input edge: child's left side, virtual nodes, parent's right side.
    std::vector<std::vector<Point>> routes;
    double width = 0;
    double height = 0;
    std::size_t initial_crossings = 0;
    std::size_t crossings = 0;
    bool operator==(const Geometry&) const = default;
};

/// Level bands left to right; y from the barycenter of upper neighbours with
/// the minimum gap enforced. `extra_height` reserves space below a node
/// (deployed property lists). Pure and deterministic.
Geometry assign_coordinates(const LayeredGraph& g, const OrderResult& order, std::span<const LayerNode> nodes,
                            std::span<const double> extra_height, const LayoutOptions& options = {});

/// make_layered → order_levels → assign_coordinates.
Geometry compute_layout(std::span<const LayerNode> nodes, std::span<const std::pair<std::size_t, std::size_t>> edges,
                        std::span<const double> extra_height = {}, const LayoutOptions& options = {});

}  // namespace ontoview
