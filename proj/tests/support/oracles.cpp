#include "oracles.hpp"

namespace ontoview::testing {

SubsumptionSet reasoner_pairs(const Ontology& o, const Reasoner& r) {
    std::vector<ClassExpression> atoms{ClassExpression::thing(), ClassExpression::nothing()};
    for (const auto& iri : o.signature().classes) {
        atoms.push_back(ClassExpression::named(iri));
    }
    SubsumptionSet out;
    for (const auto& a : atoms) {
        for (const auto& b : atoms) {
            if (r.is_subsumed(a, b)) {
                out.emplace(a, b);
            }
        }
    }
    return out;
}

std::vector<ClassExpression> complex_terms(const Ontology& o) {
    std::set<ClassExpression> out;
    auto note = [&](const ClassExpression& ce) {
        for (const auto& s : ce.subterms()) {
            if (!s.is_atomic()) {
                out.insert(s);
            }
        }
    };
    for (const auto& ax : o.axioms()) {
        if (const auto* s = std::get_if<SubClassOf>(&ax)) {
            note(s->sub);
            note(s->sup);
        } else if (const auto* e = std::get_if<EquivalentClasses>(&ax)) {
            for (const auto& m : e->members) {
                note(m);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<std::string> fingerprint(const OntoGraph& g) {
    std::vector<std::string> out;
    for (const auto& n : g.nodes) {
        std::string s = n.id + "|" + std::string(to_string(n.kind)) + "|";
        for (const auto p : n.parents) {
            s += g.nodes[p].id + ",";
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace ontoview::testing
