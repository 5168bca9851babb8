#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoview/layout.hpp"
#include "ontoview/onto_graph.hpp"
#include "ontoview/relevance.hpp"

namespace ontoview {

enum class Policy : std::uint8_t { Relevance, GeneralFirst, SpecificFirst };
enum class Direction : std::uint8_t { Descendants, Ancestors };

std::string_view to_string(Policy policy) noexcept;
std::string_view to_string(Direction direction) noexcept;
std::optional<Policy> parse_policy(std::string_view text);
std::optional<Direction> parse_direction(std::string_view text);

struct Markers {
    /// "D": disjointness lines.
    bool disjoint = false;
    /// "P": property list.
    bool properties = false;
    bool operator==(const Markers&) const = default;
};

struct Expansion {
    std::size_t node = 0;
    Direction direction = Direction::Descendants;
    std::vector<std::size_t> revealed;
    bool operator==(const Expansion&) const = default;
};

/// Everything the user controls about one view. Node references are graph indices.
struct ViewState {
    std::vector<char> visible;
    double step_percent = 25.0;
    /// Unset means relevance when working on Thing, general-first elsewhere.
    std::optional<Policy> policy;
    double zoom = 1.0;
    DetailWindow window;
    std::map<std::size_t, Point> position_overrides;
    std::optional<std::size_t> selection;
    std::map<std::size_t, Markers> markers;
    std::map<std::size_t, double> sliders;
    /// The most recent expansion, undone exactly by a matching collapse.
    std::optional<Expansion> last_expansion;

    bool operator==(const ViewState&) const = default;
};

class ViewError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Change {
    std::vector<std::size_t> revealed;
    std::vector<std::size_t> hidden;
    bool noop() const noexcept { return revealed.empty() && hidden.empty(); }
};

struct DashedEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    bool operator==(const DashedEdge&) const = default;
    auto operator<=>(const DashedEdge&) const = default;
};

/// Indirect connectors: (d, a) with both visible, a a strict ancestor of d
/// but not a parent, and no visible node strictly between them.
std::vector<DashedEdge> derive_dashed(const OntoGraph& graph, const std::vector<char>& visible);

struct VisibleRatio {
    std::size_t visible = 0;
    std::size_t total = 0;
    bool operator==(const VisibleRatio&) const = default;
};

VisibleRatio visible_ratio(const OntoGraph& graph, const std::vector<char>& visible, std::size_t node);

/// Case-insensitive substring search over labels, rdfs:labels and rendered
/// equivalents, ordered by earliest match position, then label.
std::vector<std::size_t> search(const OntoGraph& graph, std::string_view query);

/**
 * Visibility operations over one graph. Levels and relevance scores are
 * computed once; the explorer itself is immutable and shared, each call
 * mutates the ViewState it is given.
 */
class Explorer {
public:
    Explorer(std::shared_ptr<const OntoGraph> graph, RelevanceScore relevance);

    const OntoGraph& graph() const noexcept { return *graph_; }
    std::shared_ptr<const OntoGraph> shared_graph() const noexcept { return graph_; }
    const std::vector<std::size_t>& levels() const noexcept { return levels_; }
    const RelevanceScore& relevance() const noexcept { return relevance_; }

    /// Thing and its direct children.
    ViewState initial_state() const;

    Policy policy_for(const ViewState& state, std::size_t node) const;
    /// All strict descendants or ancestors of `node`, first to reveal first.
    std::vector<std::size_t> policy_order(std::size_t node, Direction direction, Policy policy) const;
    /// max(1, ceil(step% × total)) where total counts descendants or ancestors.
    std::size_t step_size(const ViewState& state, std::size_t node, Direction direction) const;

    Change expand(ViewState& state, std::size_t node, Direction direction) const;
    Change collapse(ViewState& state, std::size_t node, Direction direction) const;
    /// Visible descendants become the first round(percent% × total) in policy order.
    Change set_slider(ViewState& state, std::size_t node, double percent) const;
    /// Visible set becomes `nodes` plus Thing.
    Change show_only(ViewState& state, const std::vector<std::size_t>& nodes) const;
    void set_step(ViewState& state, double percent) const;
    void set_policy(ViewState& state, std::optional<Policy> policy) const;

private:
    void require_visible(const ViewState& state, std::size_t node) const;
    Change apply(ViewState& state, const std::vector<char>& next) const;

    std::shared_ptr<const OntoGraph> graph_;
    std::vector<std::size_t> levels_;
    RelevanceScore relevance_;
};

/// Carries `state` onto a rebuilt graph by node id; ids that no longer exist are dropped.
ViewState rebind(const ViewState& state, const OntoGraph& from, const OntoGraph& to);

}  // namespace ontoview
