#pragma once

#include <set>
#include <utility>
#include <vector>

#include "ontoview/onto_graph.hpp"
#include "ontoview/ontology.hpp"

namespace ontoview::testing {

using MemberSet = std::vector<ClassExpression>;
using EdgeSet = std::set<std::pair<MemberSet, MemberSet>>;

/// Transitive reduction of the naive-oracle preorder over Thing, the named
/// classes and `expressions`, with unsatisfiable terms left out. Edges join
/// equivalence classes, each given as its sorted member list.
EdgeSet oracle_direct_edges(const Ontology& ontology, const std::vector<ClassExpression>& expressions);

/// isA edges of `g` in the same shape, ignoring the Nothing node.
EdgeSet graph_direct_edges(const OntoGraph& g);

}  // namespace ontoview::testing
