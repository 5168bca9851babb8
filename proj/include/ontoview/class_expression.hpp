#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ontoview/iri.hpp"

namespace ontoview {

/// Declaration order is the canonical sort order of constructors.
enum class ExprKind : std::uint8_t {
    Thing,
    Nothing,
    Atomic,
    And,
    Or,
    Not,
    Exists,
    ForAll,
    MinCard,
    MaxCard,
    ExactCard,
};

/**
 * Immutable description-logic concept term in canonical form.
 *
 * Canonical form: And/Or operands are flattened, sorted and deduplicated;
 * Thing is dropped from conjunctions and Nothing from disjunctions; a
 * singleton And/Or collapses to its operand. Structurally identical terms
 * compare equal, and every factory returns canonical terms, so
 * canonicalization is idempotent by construction.
 *
 * Copies share the underlying node.
 */
class ClassExpression {
public:
    /// owl:Thing
    ClassExpression();

    static ClassExpression thing();
    static ClassExpression nothing();
    /// owl:Thing / owl:Nothing IRIs map to the dedicated kinds.
    static ClassExpression named(Iri iri);
    static ClassExpression conjunction(std::vector<ClassExpression> operands);
    static ClassExpression disjunction(std::vector<ClassExpression> operands);
    static ClassExpression complement(ClassExpression operand);
    static ClassExpression some(Iri role, ClassExpression filler);
    static ClassExpression only(Iri role, ClassExpression filler);
    static ClassExpression min_card(std::uint32_t n, Iri role, ClassExpression filler);
    static ClassExpression max_card(std::uint32_t n, Iri role, ClassExpression filler);
    static ClassExpression exact_card(std::uint32_t n, Iri role, ClassExpression filler);

    ExprKind kind() const noexcept;

    /// Thing, Nothing or a named class.
    bool is_atomic() const noexcept;
    bool is_named() const noexcept { return kind() == ExprKind::Atomic; }
    /// Built only from Thing, Nothing, Atomic, And and Exists.
    bool is_el() const noexcept;

    /// Class IRI for Atomic, owl:Thing / owl:Nothing for the constants.
    const Iri& iri() const;
    /// Property IRI of a restriction.
    const Iri& role() const;
    /// Operands of And / Or.
    std::span<const ClassExpression> operands() const;
    /// Operand of Not.
    const ClassExpression& operand() const;
    /// Filler of a restriction.
    const ClassExpression& filler() const;
    std::uint32_t cardinality() const;

    std::size_t hash() const noexcept;

    /// Calls `f(iri, is_role)` for every class and property IRI in the term.
    void for_each_iri(const std::function<void(const Iri&, bool)>& f) const;

    /// All distinct subterms including this one, children before parents.
    std::vector<ClassExpression> subterms() const;

    friend bool operator==(const ClassExpression& a, const ClassExpression& b) noexcept;
    friend std::strong_ordering operator<=>(const ClassExpression& a, const ClassExpression& b) noexcept;

private:
    struct Node;
    explicit ClassExpression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static ClassExpression make(ExprKind kind, Iri iri, std::uint32_t n,
                                std::vector<ClassExpression> children);
    static ClassExpression nary(ExprKind kind, std::vector<ClassExpression> operands);

    std::shared_ptr<const Node> node_;
};

/// Manchester-style text using local names: `A and (S some Thing)`.
std::string render(const ClassExpression& ce);

/// Human-readable name of a constructor ("ObjectIntersectionOf", ...).
std::string_view functional_name(ExprKind kind) noexcept;

}  // namespace ontoview

template <>
struct std::hash<ontoview::ClassExpression> {
    std::size_t operator()(const ontoview::ClassExpression& ce) const noexcept { return ce.hash(); }
};
