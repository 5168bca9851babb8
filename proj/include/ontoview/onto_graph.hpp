#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ontoview/class_expression.hpp"
#include "ontoview/iri.hpp"

namespace ontoview {

enum class NodeKind : std::uint8_t { Primitive, Defined, Anonymous };

std::string_view to_string(NodeKind kind) noexcept;

struct PropertyDescriptor {
    Iri iri;
    bool is_data_property = false;
    /// Object properties: nodes carrying the range expressions.
    std::vector<std::size_t> range_nodes;
    /// Data properties: datatype labels such as "xsd:string".
    std::vector<std::string> range_datatypes;
    bool functional = false;
    bool transitive = false;
    std::vector<Iri> inverses;
    std::vector<Iri> super_properties;
    /// The domain expression was outside the detail window; attached to its nearest placed ancestors.
    bool approximate = false;
};

struct OntoNode {
    /// "n" + 16 hex digits of a hash of the representative's canonical text.
    std::string id;
    NodeKind kind = NodeKind::Primitive;
    std::string label;
    ClassExpression expression;
    /// All equivalent expressions held by the node, sorted.
    std::vector<ClassExpression> members;
    /// Rendered members other than the representative.
    std::vector<std::string> equivalents;
    /// rdfs:label texts of named members.
    std::vector<std::string> labels;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> children;
    std::vector<std::size_t> disjoint_with;
    std::vector<PropertyDescriptor> properties;
    std::vector<Iri> instances;
    std::size_t total_descendants = 0;
    /// The Nothing node.
    bool unsatisfiable = false;
};

struct RangeEdge {
    std::size_t domain_node = 0;
    Iri property;
    std::size_t target = 0;
    bool operator==(const RangeEdge&) const = default;
};

struct SubPropertyEdge {
    Iri sub;
    Iri sup;
    bool operator==(const SubPropertyEdge&) const = default;
};

struct DisjointPair {
    std::size_t a = 0;
    std::size_t b = 0;
    bool inferred = false;
    bool operator==(const DisjointPair&) const = default;
};

/// Bounds (upper, lower) on which anonymous expressions become nodes.
struct DetailWindow {
    ClassExpression upper = ClassExpression::thing();
    ClassExpression lower = ClassExpression::nothing();
    bool operator==(const DetailWindow&) const = default;
};

class InvalidWindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Display graph. Node 0 is always Thing. Nodes reference each other by
 * index; `finalize` fixes the order (Thing, then by label and id),
 * assigns ids and computes descendant sets.
 */
class OntoGraph {
public:
    std::vector<OntoNode> nodes;
    std::vector<RangeEdge> range_edges;
    std::vector<SubPropertyEdge> subproperty_edges;
    std::vector<DisjointPair> disjoint_pairs;

    static constexpr std::size_t kThing = 0;

    std::size_t size() const noexcept { return nodes.size(); }
    const ClassExpression& expression(std::size_t i) const { return nodes[i].expression; }
    std::span<const std::size_t> parents(std::size_t i) const { return nodes[i].parents; }
    std::span<const std::size_t> children(std::size_t i) const { return nodes[i].children; }
    bool excluded(std::size_t i) const { return nodes[i].unsatisfiable; }

    /// Node holding `ce` as a member.
    std::optional<std::size_t> node_of(const ClassExpression& ce) const;
    std::optional<std::size_t> find(std::string_view id) const;

    /// (child, parent) pairs.
    std::vector<std::pair<std::size_t, std::size_t>> isa_edges() const;

    /// Strict descendants, sorted. Valid after finalize.
    std::span<const std::size_t> descendants(std::size_t i) const { return descendants_[i]; }
    bool is_descendant(std::size_t d, std::size_t ancestor) const;
    /// Strict ancestors, sorted. Valid after finalize.
    std::span<const std::size_t> ancestors(std::size_t i) const { return ancestors_[i]; }

    void add_edge(std::size_t child, std::size_t parent);
    void remove_edge(std::size_t child, std::size_t parent);
    std::size_t add_node(OntoNode node);
    void add_member(std::size_t node, const ClassExpression& ce);

    /// Reorders nodes, recomputes labels, kinds, ids and descendant sets.
    void finalize();

private:
    void reindex();
    std::unordered_map<ClassExpression, std::size_t> member_index_;
    std::unordered_map<std::string, std::size_t> id_index_;
    std::vector<std::vector<std::size_t>> descendants_;
    std::vector<std::vector<std::size_t>> ancestors_;
};

/// 64-bit FNV-1a over `text`, as 16 lower-case hex digits.
std::string stable_hash(std::string_view text);

}  // namespace ontoview
