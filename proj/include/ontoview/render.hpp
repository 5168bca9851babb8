#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ontoview/layout.hpp"
#include "ontoview/view_state.hpp"

namespace ontoview {

/// Geometry of the visible part of a view.
struct ViewLayout {
    /// Visible graph indices, ascending; boxes and levels are parallel to it.
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> levels;
    /// Solid isA connectors (child, parent) between visible nodes.
    std::vector<std::pair<std::size_t, std::size_t>> isa;
    std::vector<DashedEdge> dashed;
    /// Routes: isa first, then dashed. User-dragged positions already applied.
    Geometry geometry;

    std::size_t slot(std::size_t node) const;
};

/// Levels come from the full graph, so a node keeps its column whatever is hidden.
/// Deployed property lists and equivalence bands add height below the label row.
ViewLayout layout_view(const Explorer& explorer, const ViewState& state, const LayoutOptions& options = {});

/// SVG 1.1 snapshot. Same state and layout give the same bytes.
std::string export_svg(const Explorer& explorer, const ViewState& state, const ViewLayout& layout,
                       const LayoutOptions& options = {});

/// Graphviz text of the visible graph: solid isA edges and dashed indirect ones.
std::string export_dot(const Explorer& explorer, const ViewLayout& layout);

}  // namespace ontoview
