#include "ontoview/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ontoview {

std::size_t ViewLayout::slot(std::size_t node) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    if (it == nodes.end() || *it != node) {
        throw std::out_of_range("node is not in the layout");
    }
    return static_cast<std::size_t>(it - nodes.begin());
}

namespace {

double band_height(const OntoNode& node, const LayoutOptions& options) {
    double extra = 0.0;
    if (node.kind == NodeKind::Defined && !node.equivalents.empty()) {
        extra += options.property_row * static_cast<double>(node.equivalents.size());
    }
    return extra;
}

double property_height(const OntoNode& node, std::size_t index, const ViewState& state,
                       const LayoutOptions& options) {
    const auto m = state.markers.find(index);
    if (m == state.markers.end() || !m->second.properties) {
        return 0.0;
    }
    return options.property_row * static_cast<double>(node.properties.size());
}

}  // namespace

ViewLayout layout_view(const Explorer& explorer, const ViewState& state, const LayoutOptions& options) {
    const OntoGraph& g = explorer.graph();
    ViewLayout out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (state.visible[i]) {
            out.nodes.push_back(i);
            out.levels.push_back(explorer.levels()[i]);
        }
    }
    for (const auto c : out.nodes) {
        for (const auto p : g.parents(c)) {
            if (state.visible[p]) {
                out.isa.emplace_back(c, p);
            }
        }
    }
    out.dashed = derive_dashed(g, state.visible);

    std::vector<LayerNode> nodes;
    std::vector<double> extra;
    for (const auto v : out.nodes) {
        nodes.push_back({explorer.levels()[v], g.nodes[v].label, g.nodes[v].id});
        extra.push_back(band_height(g.nodes[v], options) + property_height(g.nodes[v], v, state, options));
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [c, p] : out.isa) {
        edges.emplace_back(out.slot(c), out.slot(p));
    }
    for (const auto& d : out.dashed) {
        edges.emplace_back(out.slot(d.from), out.slot(d.to));
    }
    out.geometry = compute_layout(nodes, edges, extra, options);

    if (!state.position_overrides.empty()) {
        for (const auto& [v, p] : state.position_overrides) {
            if (v < state.visible.size() && state.visible[v]) {
                auto& box = out.geometry.boxes[out.slot(v)];
                box.x = p.x;
                box.y = p.y;
            }
        }
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& child = out.geometry.boxes[edges[e].first];
            const auto& parent = out.geometry.boxes[edges[e].second];
            auto& route = out.geometry.routes[e];
            route.front() = {child.x, child.y + options.node_height / 2.0};
            route.back() = {parent.x + parent.width, parent.y + options.node_height / 2.0};
        }
        for (const auto& b : out.geometry.boxes) {
            out.geometry.width = std::max(out.geometry.width, b.x + b.width + options.margin);
            out.geometry.height = std::max(out.geometry.height, b.y + b.height + options.margin);
        }
    }
    return out;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        case '\'':
            out += "&apos;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string path_data(const std::vector<Point>& route) {
    std::string d;
    for (std::size_t k = 0; k < route.size(); ++k) {
        d += (k == 0 ? "M " : " L ") + num(route[k].x) + " " + num(route[k].y);
    }
    return d;
}

Point centre(const Box& b) { return {b.x + b.width / 2.0, b.y + b.height / 2.0}; }

const char* const kBlue = "#3a6fc4";
const char* const kOrange = "#f08c1e";
const char* const kRed = "#d43a2f";
const char* const kLightBlue = "#8fc9ee";

}  // namespace

std::string export_svg(const Explorer& explorer, const ViewState& state, const ViewLayout& layout,
                       const LayoutOptions& options) {
    const OntoGraph& g = explorer.graph();
    const Geometry& geo = layout.geometry;
    const double z = state.zoom;
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(geo.width * z)
      << "\" height=\"" << num(geo.height * z) << "\" viewBox=\"0.00 0.00 " << num(geo.width * z) << " "
      << num(geo.height * z) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<g transform=\"scale(" << num(z) << ")\">\n";
    s << "<rect class=\"background\" x=\"0.00\" y=\"0.00\" width=\"" << num(geo.width) << "\" height=\""
      << num(geo.height) << "\" fill=\"#ffffff\"/>\n";

    s << "<g class=\"levels\">\n";
    for (const auto& band : geo.bands) {
        s << "<line class=\"level\" x1=\"" << num(band.x0) << "\" y1=\"0.00\" x2=\"" << num(band.x0) << "\" y2=\""
          << num(geo.height) << "\" stroke=\"#e2e2e2\" stroke-dasharray=\"2 4\"/>\n";
    }
    s << "</g>\n";

    auto selected = [&](std::size_t a, std::size_t b) {
        return state.selection && (*state.selection == a || *state.selection == b);
    };
    s << "<g class=\"connectors\">\n";
    std::size_t route = 0;
    for (const auto& [c, p] : layout.isa) {
        s << "<path class=\"isa\" d=\"" << path_data(geo.routes[route++]) << "\" fill=\"none\" stroke=\""
          << (selected(c, p) ? kOrange : kBlue) << "\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& d : layout.dashed) {
        s << "<path class=\"dashed\" d=\"" << path_data(geo.routes[route++]) << "\" fill=\"none\" stroke=\""
          << (selected(d.from, d.to) ? kOrange : kBlue) << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }
    for (const auto& [v, m] : state.markers) {
        if (!state.visible[v]) {
            continue;
        }
        const Point a = centre(geo.boxes[layout.slot(v)]);
        if (m.disjoint) {
            for (const auto w : g.nodes[v].disjoint_with) {
                if (!state.visible[w]) {
                    continue;
                }
                const Point b = centre(geo.boxes[layout.slot(w)]);
                for (const double off : {-2.0, 2.0}) {
                    s << "<line class=\"disjoint\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y + off) << "\" x2=\""
                      << num(b.x) << "\" y2=\"" << num(b.y + off) << "\" stroke=\"" << kRed << "\"/>\n";
                }
            }
        }
        if (m.properties) {
            for (const auto& r : g.range_edges) {
                if (r.domain_node != v || !state.visible[r.target]) {
                    continue;
                }
                const Point b = centre(geo.boxes[layout.slot(r.target)]);
                s << "<line class=\"range\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
                  << "\" y2=\"" << num(b.y) << "\" stroke=\"" << kLightBlue << "\"/>\n";
            }
        }
    }
    s << "</g>\n";

    s << "<g class=\"nodes\">\n";
    for (std::size_t k = 0; k < layout.nodes.size(); ++k) {
        const std::size_t v = layout.nodes[k];
        const OntoNode& node = g.nodes[v];
        const Box& b = geo.boxes[k];
        const bool is_selected = state.selection && *state.selection == v;
        const auto marker = state.markers.find(v);
        s << "<g id=\"" << node.id << "\">\n";
        const double top = options.node_height;
        if (node.kind == NodeKind::Anonymous) {
            s << "<rect class=\"node anonymous\" x=\"" << num(b.x) << "\" y=\"" << num(b.y) << "\" width=\""
              << num(b.width) << "\" height=\"" << num(top) << "\" rx=\"10.00\" fill=\"#fdf3e1\" stroke=\""
              << (is_selected ? kOrange : "#b3862f") << "\"/>\n";
        } else {
            s << "<rect class=\"node " << to_string(node.kind) << "\" x=\"" << num(b.x) << "\" y=\"" << num(b.y)
              << "\" width=\"" << num(b.width) << "\" height=\"" << num(top) << "\" fill=\"#dcdcdc\" stroke=\""
              << (is_selected ? kOrange : "#8c8c8c") << "\"/>\n";
        }
        const auto ratio = visible_ratio(g, state.visible, v);
        if (ratio.total > 0) {
            const double frac = static_cast<double>(ratio.visible) / static_cast<double>(ratio.total);
            s << "<rect class=\"ratio\" x=\"" << num(b.x) << "\" y=\"" << num(b.y) << "\" width=\""
              << num(b.width * frac) << "\" height=\"3.00\" fill=\"" << kBlue << "\"/>\n";
        }
        s << "<text x=\"" << num(b.x + options.padding / 2.0) << "\" y=\"" << num(b.y + top / 2.0 + 4.0) << "\">"
          << escape(node.label) << "</text>\n";
        double y = b.y + top;
        if (node.kind == NodeKind::Defined && !node.equivalents.empty()) {
            const double h = options.property_row * static_cast<double>(node.equivalents.size());
            s << "<rect class=\"band\" x=\"" << num(b.x) << "\" y=\"" << num(y) << "\" width=\"" << num(b.width)
              << "\" height=\"" << num(h) << "\" fill=\"#6abf69\"/>\n";
            for (const auto& eq : node.equivalents) {
                y += options.property_row;
                s << "<text class=\"equivalent\" x=\"" << num(b.x + 4.0) << "\" y=\"" << num(y - 3.0)
                  << "\" font-size=\"10\">" << escape(eq) << "</text>\n";
            }
        }
        if (!node.disjoint_with.empty()) {
            s << "<text class=\"marker\" x=\"" << num(b.x + b.width - 20.0) << "\" y=\"" << num(b.y + 11.0)
              << "\" font-size=\"9\">D</text>\n";
        }
        if (!node.properties.empty()) {
            s << "<text class=\"marker\" x=\"" << num(b.x + b.width - 10.0) << "\" y=\"" << num(b.y + 11.0)
              << "\" font-size=\"9\">P</text>\n";
            if (marker != state.markers.end() && marker->second.properties) {
                for (const auto& p : node.properties) {
                    y += options.property_row;
                    s << "<text class=\"property\" x=\"" << num(b.x + 4.0) << "\" y=\"" << num(y - 3.0)
                      << "\" font-size=\"10\">" << escape(p.iri.local_name()) << "</text>\n";
                }
            }
        }
        s << "</g>\n";
    }
    s << "</g>\n</g>\n</svg>\n";
    return s.str();
}

std::string export_dot(const Explorer& explorer, const ViewLayout& layout) {
    const OntoGraph& g = explorer.graph();
    std::ostringstream s;
    s << "digraph ontoview {\n  rankdir=RL;\n  node [shape=box];\n";
    for (const auto v : layout.nodes) {
        const auto& n = g.nodes[v];
        std::string label;
        for (const char c : n.label) {
            label += c == '"' ? std::string("\\\"") : std::string(1, c);
        }
        s << "  \"" << n.id << "\" [label=\"" << label << "\"";
        if (n.kind == NodeKind::Anonymous) {
            s << ", style=rounded";
        } else if (n.kind == NodeKind::Defined) {
            s << ", style=filled, fillcolor=\"#6abf69\"";
        }
        s << "];\n";
    }
    for (const auto& [c, p] : layout.isa) {
        s << "  \"" << g.nodes[c].id << "\" -> \"" << g.nodes[p].id << "\";\n";
    }
    for (const auto& d : layout.dashed) {
        s << "  \"" << g.nodes[d.from].id << "\" -> \"" << g.nodes[d.to].id << "\" [style=dashed];\n";
    }
    s << "}\n";
    return s.str();
}

}  // namespace ontoview
