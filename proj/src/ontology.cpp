#include "ontoview/ontology.hpp"

#include <algorithm>
#include <stdexcept>

namespace ontoview {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void canonical_members(std::vector<ClassExpression>& members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

}  // namespace

std::string axiom_kind_name(const Axiom& axiom) {
    return std::visit(
        overloaded{
            [](const SubClassOf&) -> std::string { return "SubClassOf"; },
            [](const EquivalentClasses&) -> std::string { return "EquivalentClasses"; },
            [](const DisjointClasses&) -> std::string { return "DisjointClasses"; },
            [](const PropertyDomain& a) -> std::string {
                return a.data_property ? "DataPropertyDomain" : "ObjectPropertyDomain";
            },
            [](const PropertyRange& a) -> std::string {
                return a.data_property ? "DataPropertyRange" : "ObjectPropertyRange";
            },
            [](const SubPropertyOf&) -> std::string { return "SubObjectPropertyOf"; },
            [](const ClassAssertion&) -> std::string { return "ClassAssertion"; },
            [](const PropertyCharacteristic& a) -> std::string {
                switch (a.trait) {
                case PropertyTrait::Functional:
                    return "FunctionalObjectProperty";
                case PropertyTrait::Transitive:
                    return "TransitiveObjectProperty";
                case PropertyTrait::InverseOf:
                    return "InverseObjectProperties";
                }
                return {};
            },
            [](const Declaration&) -> std::string { return "Declaration"; },
            [](const PropertyAssertion&) -> std::string { return "ObjectPropertyAssertion"; },
            [](const LabelAnnotation&) -> std::string { return "AnnotationAssertion"; },
        },
        axiom);
}

void Ontology::add(Axiom axiom) {
    auto& sig = signature_;
    auto note_expr = [&sig](const ClassExpression& ce) {
        ce.for_each_iri([&sig](const Iri& iri, bool is_role) {
            (is_role ? sig.object_properties : sig.classes).insert(iri);
        });
    };
    std::visit(overloaded{
                   [&](SubClassOf& a) {
                       note_expr(a.sub);
                       note_expr(a.sup);
                   },
                   [&](EquivalentClasses& a) {
                       canonical_members(a.members);
                       if (a.members.empty()) {
                           throw std::invalid_argument("EquivalentClasses needs members");
                       }
                       for (const auto& m : a.members) {
                           note_expr(m);
                       }
                   },
                   [&](DisjointClasses& a) {
                       canonical_members(a.members);
                       if (a.members.empty()) {
                           throw std::invalid_argument("DisjointClasses needs members");
                       }
                       for (const auto& m : a.members) {
                           note_expr(m);
                       }
                   },
                   [&](PropertyDomain& a) {
                       (a.data_property ? sig.data_properties : sig.object_properties).insert(a.property);
                       note_expr(a.domain);
                   },
                   [&](PropertyRange& a) {
                       (a.data_property ? sig.data_properties : sig.object_properties).insert(a.property);
                       if (const auto* ce = std::get_if<ClassExpression>(&a.range)) {
                           note_expr(*ce);
                       }
                   },
                   [&](SubPropertyOf& a) {
                       sig.object_properties.insert(a.sub);
                       sig.object_properties.insert(a.sup);
                   },
                   [&](ClassAssertion& a) {
                       sig.individuals.insert(a.individual);
                       note_expr(a.type);
                   },
                   [&](PropertyCharacteristic& a) {
                       sig.object_properties.insert(a.property);
                       if (a.inverse) {
                           sig.object_properties.insert(*a.inverse);
                       }
                   },
                   [&](Declaration& a) {
                       switch (a.entity) {
                       case EntityKind::Class:
                           if (a.iri != vocab::owl_thing() && a.iri != vocab::owl_nothing()) {
                               sig.classes.insert(a.iri);
                           }
                           break;
                       case EntityKind::ObjectProperty:
                           sig.object_properties.insert(a.iri);
                           break;
                       case EntityKind::DataProperty:
                           sig.data_properties.insert(a.iri);
                           break;
                       case EntityKind::NamedIndividual:
                           sig.individuals.insert(a.iri);
                           break;
                       case EntityKind::AnnotationProperty:
                       case EntityKind::Datatype:
                           break;
                       }
                   },
                   [&](PropertyAssertion& a) {
                       sig.object_properties.insert(a.property);
                       sig.individuals.insert(a.subject);
                       sig.individuals.insert(a.object);
                   },
                   [&](LabelAnnotation&) {},
               },
               axiom);
    axioms_.push_back(std::move(axiom));
}

std::vector<Axiom> Ontology::axiom_set() const {
    std::vector<Axiom> out = axioms_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t Ontology::gci_count() const {
    return static_cast<std::size_t>(std::count_if(axioms_.begin(), axioms_.end(), [](const Axiom& a) {
        const auto* sub = std::get_if<SubClassOf>(&a);
        return sub != nullptr && sub->is_gci();
    }));
}

}  // namespace ontoview
