#pragma once

#include <span>
#include <vector>

#include "ontoview/onto_graph.hpp"
#include "ontoview/ontology.hpp"
#include "ontoview/reasoner.hpp"

namespace ontoview {

/// Thing plus one node per named equivalence class, with the taxonomy's direct edges.
OntoGraph build_scaffold(const Taxonomy& taxonomy);

/// Non-atomic expressions at axiom level: SubClassOf sides, EquivalentClasses and
/// DisjointClasses members, property domains, object ranges and ClassAssertion types.
/// Sorted and duplicate-free.
std::vector<ClassExpression> harvest_expressions(const Ontology& ontology);

/// Throws InvalidWindowError unless lower ⊑ upper (and both use signature IRIs).
void check_window(const Reasoner& reasoner, const DetailWindow& window);

/// Inserts every expression with lower ⊑ e ⊑ upper: merged into an equivalent
/// node, or placed between its direct subsumers and subsumees with the edges
/// it makes redundant removed. The result does not depend on input order.
void place_expressions(OntoGraph& graph, std::span<const ClassExpression> expressions, const DetailWindow& window,
                       const Reasoner& reasoner);

/// Properties, range and subproperty edges, disjointness, instances and rdfs:labels.
void attach_annotations(OntoGraph& graph, const Ontology& ontology, const Reasoner& reasoner);

/// scaffold → place → annotate → finalize.
OntoGraph build_graph(const Ontology& ontology, const Taxonomy& taxonomy, std::span<const ClassExpression> harvested,
                      const DetailWindow& window, const Reasoner& reasoner);

}  // namespace ontoview
