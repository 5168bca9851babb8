#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ontoview/class_expression.hpp"
#include "ontoview/iri.hpp"

namespace ontoview {

/// A subclass axiom whose sub side is not atomic is a GCI.
struct SubClassOf {
    ClassExpression sub;
    ClassExpression sup;
    auto operator<=>(const SubClassOf&) const = default;
    bool is_gci() const { return !sub.is_atomic(); }
};

/// Members sorted and deduplicated.
struct EquivalentClasses {
    std::vector<ClassExpression> members;
    auto operator<=>(const EquivalentClasses&) const = default;
};

struct DisjointClasses {
    std::vector<ClassExpression> members;
    auto operator<=>(const DisjointClasses&) const = default;
};

struct PropertyDomain {
    Iri property;
    bool data_property = false;
    ClassExpression domain;
    auto operator<=>(const PropertyDomain&) const = default;
};

/// Opaque datatype name (full IRI, or the source text of a complex data range).
struct Datatype {
    std::string name;
    auto operator<=>(const Datatype&) const = default;
};

struct PropertyRange {
    Iri property;
    bool data_property = false;
    std::variant<ClassExpression, Datatype> range;
    auto operator<=>(const PropertyRange&) const = default;
};

struct SubPropertyOf {
    Iri sub;
    Iri sup;
    auto operator<=>(const SubPropertyOf&) const = default;
};

struct ClassAssertion {
    Iri individual;
    ClassExpression type;
    auto operator<=>(const ClassAssertion&) const = default;
};

enum class PropertyTrait : std::uint8_t { Functional, Transitive, InverseOf };

struct PropertyCharacteristic {
    Iri property;
    PropertyTrait trait = PropertyTrait::Functional;
    /// Set for InverseOf only.
    std::optional<Iri> inverse;
    auto operator<=>(const PropertyCharacteristic&) const = default;
};

enum class EntityKind : std::uint8_t {
    Class,
    ObjectProperty,
    DataProperty,
    AnnotationProperty,
    NamedIndividual,
    Datatype,
};

struct Declaration {
    EntityKind entity = EntityKind::Class;
    Iri iri;
    auto operator<=>(const Declaration&) const = default;
};

struct PropertyAssertion {
    Iri property;
    Iri subject;
    Iri object;
    auto operator<=>(const PropertyAssertion&) const = default;
};

/// AnnotationAssertion(rdfs:label subject "text"@lang)
struct LabelAnnotation {
    Iri subject;
    std::string text;
    std::string language;
    auto operator<=>(const LabelAnnotation&) const = default;
};

using Axiom = std::variant<SubClassOf, EquivalentClasses, DisjointClasses, PropertyDomain, PropertyRange,
                           SubPropertyOf, ClassAssertion, PropertyCharacteristic, Declaration,
                           PropertyAssertion, LabelAnnotation>;

/// Name of the functional-syntax axiom constructor that produced `axiom`.
std::string axiom_kind_name(const Axiom& axiom);

/// A recognized axiom kind this engine does not model. Kept verbatim.
struct SkipRecord {
    std::string kind;
    std::size_t line = 0;
    std::size_t column = 0;
    std::string text;
    bool operator==(const SkipRecord&) const = default;
};

struct Signature {
    std::set<Iri> classes;
    std::set<Iri> object_properties;
    std::set<Iri> data_properties;
    std::set<Iri> individuals;
};

class Ontology {
public:
    std::optional<Iri> iri;
    std::optional<Iri> version_iri;
    PrefixTable prefixes = PrefixTable::with_standard_prefixes();
    std::vector<Iri> imports;
    /// Ontology-level Annotation(...) entries, kept as source text.
    std::vector<std::string> annotations;

    /// Validates the axiom shape, canonicalizes member lists and extends the signature.
    void add(Axiom axiom);
    void add_skip(SkipRecord record) { skipped_.push_back(std::move(record)); }

    const std::vector<Axiom>& axioms() const noexcept { return axioms_; }
    const std::vector<SkipRecord>& skipped() const noexcept { return skipped_; }
    const Signature& signature() const noexcept { return signature_; }

    /// Sorted, duplicate-free axiom set (multiplicity dropped).
    std::vector<Axiom> axiom_set() const;

    std::size_t gci_count() const;

private:
    std::vector<Axiom> axioms_;
    std::vector<SkipRecord> skipped_;
    Signature signature_;
};

}  // namespace ontoview
