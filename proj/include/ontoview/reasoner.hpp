#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ontoview/class_expression.hpp"
#include "ontoview/ontology.hpp"

namespace ontoview {

using AtomId = std::uint32_t;
using RoleId = std::uint32_t;

inline constexpr AtomId kTopAtom = 0;
inline constexpr AtomId kBottomAtom = 1;

/// An expression refers to a class or property outside the ontology signature.
class UnknownIriError : public std::runtime_error {
public:
    explicit UnknownIriError(const Iri& iri)
        : std::runtime_error("unknown IRI in class expression: " + iri.str()), iri_(iri) {}
    const Iri& iri() const noexcept { return iri_; }

private:
    Iri iri_;
};

/// Thing ⊑ Nothing was derived.
class InconsistentOntologyError : public std::runtime_error {
public:
    InconsistentOntologyError() : std::runtime_error("ontology is inconsistent (Thing is unsatisfiable)") {}
};

/// One normalized inclusion over atoms.
///   Subsumption:  lhs ⊑ rhs
///   Conjunction:  lhs ⊓ lhs2 ⊑ rhs
///   ExistsRight:  lhs ⊑ ∃role.rhs
///   ExistsLeft:   ∃role.lhs ⊑ rhs
struct NormalRule {
    enum class Form : std::uint8_t { Subsumption, Conjunction, ExistsRight, ExistsLeft };
    Form form = Form::Subsumption;
    AtomId lhs = 0;
    AtomId lhs2 = 0;
    RoleId role = 0;
    AtomId rhs = 0;
    auto operator<=>(const NormalRule&) const = default;
};

/**
 * Normal-form rules plus the bijection between atoms and class expressions.
 *
 * Atom 0 is Thing, atom 1 is Nothing, then every named class of the
 * signature in IRI order, then one atom per complex expression that needed
 * a name. EL expressions get a full definition (X ≡ E); Or gets
 * `operand ⊑ X`; Not, ForAll and cardinality restrictions are opaque atoms
 * constrained only by told axioms.
 */
class RuleSet {
public:
    std::size_t atom_count() const noexcept { return atoms_.size(); }
    const ClassExpression& expression(AtomId atom) const { return atoms_.at(atom); }
    std::optional<AtomId> find(const ClassExpression& ce) const;
    /// Complex expression outside the EL fragment.
    bool is_surrogate(AtomId atom) const { return !atoms_.at(atom).is_atomic() && !atoms_.at(atom).is_el(); }

    std::span<const NormalRule> rules() const noexcept { return rules_; }

    std::size_t role_count() const noexcept { return roles_.size(); }
    const Iri& role(RoleId id) const { return roles_.at(id); }
    std::optional<RoleId> find_role(const Iri& iri) const;
    /// Direct told role inclusions (sub, sup).
    std::span<const std::pair<RoleId, RoleId>> role_inclusions() const noexcept { return role_inclusions_; }
    bool is_transitive(RoleId id) const { return transitive_.contains(id); }

private:
    friend class Normalizer;
    std::vector<ClassExpression> atoms_;
    std::unordered_map<ClassExpression, AtomId> index_;
    std::vector<NormalRule> rules_;
    std::vector<Iri> roles_;
    std::unordered_map<Iri, RoleId> role_index_;
    std::vector<std::pair<RoleId, RoleId>> role_inclusions_;
    std::unordered_set<RoleId> transitive_;
};

/// Normalizes the logical axioms of `ontology`; `registered` expressions receive atoms with full definitions.
/// Throws UnknownIriError if a registered expression leaves the signature.
RuleSet normalize(const Ontology& ontology, std::span<const ClassExpression> registered = {});

/**
 * EL saturation over a normalized rule set.
 *
 * The constructor runs the completion rules to fixpoint; afterwards the
 * object is immutable and every query is const and thread-safe.
 * Expressions that were not registered are answered by saturating a fresh
 * context locally against the frozen state.
 */
class Reasoner {
public:
    explicit Reasoner(const Ontology& ontology, std::span<const ClassExpression> registered = {});
    explicit Reasoner(RuleSet rules);
    ~Reasoner();
    Reasoner(Reasoner&&) noexcept;
    Reasoner& operator=(Reasoner&&) noexcept;

    const RuleSet& rules() const noexcept;

    bool is_consistent() const;

    /// sub ⊑ sup under the fragment semantics. Reflexive and transitive; sound.
    bool is_subsumed(const ClassExpression& sub, const ClassExpression& sup) const;
    bool is_equivalent(const ClassExpression& a, const ClassExpression& b) const;
    bool is_unsatisfiable(const ClassExpression& ce) const;

    /// Atoms in the saturated context of a registered atom.
    std::vector<AtomId> subsumers(AtomId atom) const;

    /// Throws UnknownIriError when `ce` uses IRIs outside the signature.
    void check_signature(const ClassExpression& ce) const;

    /// Saturated state; opaque outside the implementation.
    struct State;

private:
    std::unique_ptr<State> state_;
};

struct TaxonomyNode {
    /// Mutually subsuming expressions, sorted.
    std::vector<ClassExpression> members;
    ClassExpression representative;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> children;
};

/**
 * Equivalence classes of named classes and their direct-subsumption DAG.
 *
 * The edge relation is transitively reduced and every satisfiable node
 * reaches `top`. The `bottom` node collects Nothing and all unsatisfiable
 * names; it carries no edges.
 */
class Taxonomy {
public:
    std::vector<TaxonomyNode> nodes;
    std::size_t top = 0;
    std::size_t bottom = 1;

    std::optional<std::size_t> node_of(const ClassExpression& ce) const;

    std::size_t size() const noexcept { return nodes.size(); }
    const ClassExpression& expression(std::size_t i) const { return nodes[i].representative; }
    std::span<const std::size_t> parents(std::size_t i) const { return nodes[i].parents; }
    std::span<const std::size_t> children(std::size_t i) const { return nodes[i].children; }
    bool excluded(std::size_t i) const { return i == bottom; }

private:
    friend Taxonomy classify(const Reasoner& reasoner);
    std::unordered_map<ClassExpression, std::size_t> member_index_;
};

/// Named-class taxonomy. Throws InconsistentOntologyError.
Taxonomy classify(const Reasoner& reasoner);

/// Lexicographically smallest local name among atomic members, else the smallest complex member.
ClassExpression choose_representative(std::span<const ClassExpression> members);

/// Anything shaped like a transitively reduced DAG of class expressions.
template <class H>
concept ExpressionHierarchy = requires(const H& h, std::size_t i) {
    { h.size() } -> std::convertible_to<std::size_t>;
    { h.expression(i) } -> std::convertible_to<const ClassExpression&>;
    { h.parents(i) } -> std::convertible_to<std::span<const std::size_t>>;
    { h.children(i) } -> std::convertible_to<std::span<const std::size_t>>;
    { h.excluded(i) } -> std::convertible_to<bool>;
};

struct Neighbors {
    std::vector<std::size_t> supers;
    std::vector<std::size_t> subs;
    std::optional<std::size_t> equivalent;
};

/// Where `ce` sits in `h`: an equivalent node, or its minimal strict subsumers and maximal strict subsumees.
/// Excluded nodes (the bottom node) are ignored.
template <ExpressionHierarchy H>
Neighbors direct_neighbors(const Reasoner& reasoner, const ClassExpression& ce, const H& h) {
    const std::size_t n = h.size();
    std::vector<char> up(n, 0);
    std::vector<char> down(n, 0);
    Neighbors out;
    for (std::size_t i = 0; i < n; ++i) {
        if (h.excluded(i)) {
            continue;
        }
        up[i] = reasoner.is_subsumed(ce, h.expression(i)) ? 1 : 0;
        down[i] = reasoner.is_subsumed(h.expression(i), ce) ? 1 : 0;
        if (up[i] && down[i]) {
            out.equivalent = i;
            for (const std::size_t p : h.parents(i)) {
                out.supers.push_back(p);
            }
            for (const std::size_t c : h.children(i)) {
                out.subs.push_back(c);
            }
            return out;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (up[i]) {
            bool minimal = true;
            for (const std::size_t c : h.children(i)) {
                minimal = minimal && !up[c];
            }
            if (minimal) {
                out.supers.push_back(i);
            }
        }
        if (down[i]) {
            bool maximal = true;
            for (const std::size_t p : h.parents(i)) {
                maximal = maximal && !down[p];
            }
            if (maximal) {
                out.subs.push_back(i);
            }
        }
    }
    return out;
}

}  // namespace ontoview
