#include "ontoview/graph_builder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ontoview/functional_syntax.hpp"

namespace ontoview {

OntoGraph build_scaffold(const Taxonomy& taxonomy) {
    OntoGraph g;
    std::vector<std::size_t> node_of(taxonomy.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < taxonomy.size(); ++i) {
        const auto& t = taxonomy.nodes[i];
        if (i == taxonomy.bottom && t.members.size() < 2) {
            continue;
        }
        OntoNode n;
        n.members = t.members;
        n.expression = t.representative;
        n.unsatisfiable = i == taxonomy.bottom;
        node_of[i] = g.add_node(std::move(n));
    }
    for (std::size_t i = 0; i < taxonomy.size(); ++i) {
        for (const auto p : taxonomy.nodes[i].parents) {
            g.add_edge(node_of[i], node_of[p]);
        }
    }
    return g;
}

std::vector<ClassExpression> harvest_expressions(const Ontology& ontology) {
    std::set<ClassExpression> out;
    auto note = [&out](const ClassExpression& ce) {
        if (!ce.is_atomic()) {
            out.insert(ce);
        }
    };
    for (const auto& axiom : ontology.axioms()) {
        if (const auto* a = std::get_if<SubClassOf>(&axiom)) {
            note(a->sub);
            note(a->sup);
        } else if (const auto* a = std::get_if<EquivalentClasses>(&axiom)) {
            std::for_each(a->members.begin(), a->members.end(), note);
        } else if (const auto* a = std::get_if<DisjointClasses>(&axiom)) {
            std::for_each(a->members.begin(), a->members.end(), note);
        } else if (const auto* a = std::get_if<PropertyDomain>(&axiom)) {
            note(a->domain);
        } else if (const auto* a = std::get_if<PropertyRange>(&axiom)) {
            if (const auto* ce = std::get_if<ClassExpression>(&a->range)) {
                note(*ce);
            }
        } else if (const auto* a = std::get_if<ClassAssertion>(&axiom)) {
            note(a->type);
        }
    }
    return {out.begin(), out.end()};
}

void check_window(const Reasoner& reasoner, const DetailWindow& window) {
    try {
        reasoner.check_signature(window.upper);
        reasoner.check_signature(window.lower);
    } catch (const UnknownIriError& e) {
        throw InvalidWindowError(e.what());
    }
    if (!reasoner.is_subsumed(window.lower, window.upper)) {
        throw InvalidWindowError("detail window lower bound " + render(window.lower) +
                                 " is not subsumed by upper bound " + render(window.upper));
    }
}

namespace {

std::size_t nothing_node(OntoGraph& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nodes[i].unsatisfiable) {
            return i;
        }
    }
    OntoNode n;
    n.members = {ClassExpression::nothing()};
    n.expression = ClassExpression::nothing();
    n.unsatisfiable = true;
    return g.add_node(std::move(n));
}

void place_one(OntoGraph& g, const ClassExpression& ce, const Reasoner& reasoner) {
    if (g.node_of(ce)) {
        return;
    }
    if (reasoner.is_unsatisfiable(ce)) {
        g.add_member(nothing_node(g), ce);
        return;
    }
    const Neighbors nb = direct_neighbors(reasoner, ce, g);
    if (nb.equivalent) {
        g.add_member(*nb.equivalent, ce);
        return;
    }
    OntoNode n;
    n.kind = NodeKind::Anonymous;
    n.members = {ce};
    n.expression = ce;
    const std::size_t v = g.add_node(std::move(n));
    for (const auto c : nb.subs) {
        for (const auto s : nb.supers) {
            g.remove_edge(c, s);
        }
    }
    for (const auto s : nb.supers) {
        g.add_edge(v, s);
    }
    for (const auto c : nb.subs) {
        g.add_edge(c, v);
    }
}

}  // namespace

void place_expressions(OntoGraph& graph, std::span<const ClassExpression> expressions, const DetailWindow& window,
                       const Reasoner& reasoner) {
    check_window(reasoner, window);
    const bool open_top = window.upper.kind() == ExprKind::Thing;
    const bool open_bottom = window.lower.kind() == ExprKind::Nothing;
    for (const auto& ce : expressions) {
        if (!open_top && !reasoner.is_subsumed(ce, window.upper)) {
            continue;
        }
        if (!open_bottom && !reasoner.is_subsumed(window.lower, ce)) {
            continue;
        }
        place_one(graph, ce, reasoner);
    }
}

namespace {

struct PropertyInfo {
    bool is_data = false;
    std::vector<ClassExpression> domains;
    std::vector<ClassExpression> ranges;
    std::vector<std::string> datatypes;
    bool functional = false;
    bool transitive = false;
    std::set<Iri> inverses;
    std::set<Iri> supers;
};

/// Node holding `ce`, or its nearest placed ancestors when it was filtered out.
std::vector<std::size_t> resolve(const OntoGraph& g, const ClassExpression& ce, const Reasoner& reasoner,
                                 bool& approximate) {
    if (auto n = g.node_of(ce)) {
        return {*n};
    }
    approximate = true;
    const Neighbors nb = direct_neighbors(reasoner, ce, g);
    if (nb.equivalent) {
        return {*nb.equivalent};
    }
    return nb.supers;
}

}  // namespace

void attach_annotations(OntoGraph& g, const Ontology& ontology, const Reasoner& reasoner) {
    std::map<Iri, PropertyInfo> props;
    for (const auto& iri : ontology.signature().object_properties) {
        props[iri];
    }
    for (const auto& iri : ontology.signature().data_properties) {
        props[iri].is_data = true;
    }
    std::set<std::pair<std::size_t, std::size_t>> asserted;
    for (const auto& axiom : ontology.axioms()) {
        if (const auto* a = std::get_if<PropertyDomain>(&axiom)) {
            props[a->property].domains.push_back(a->domain);
        } else if (const auto* a = std::get_if<PropertyRange>(&axiom)) {
            auto& p = props[a->property];
            if (const auto* ce = std::get_if<ClassExpression>(&a->range)) {
                p.ranges.push_back(*ce);
            } else {
                p.datatypes.push_back(display_datatype(std::get<Datatype>(a->range)));
            }
        } else if (const auto* a = std::get_if<SubPropertyOf>(&axiom)) {
            props[a->sub].supers.insert(a->sup);
            g.subproperty_edges.push_back({a->sub, a->sup});
        } else if (const auto* a = std::get_if<PropertyCharacteristic>(&axiom)) {
            auto& p = props[a->property];
            switch (a->trait) {
            case PropertyTrait::Functional:
                p.functional = true;
                break;
            case PropertyTrait::Transitive:
                p.transitive = true;
                break;
            case PropertyTrait::InverseOf:
                p.inverses.insert(*a->inverse);
                props[*a->inverse].inverses.insert(a->property);
                break;
            }
        } else if (const auto* a = std::get_if<DisjointClasses>(&axiom)) {
            for (std::size_t i = 0; i < a->members.size(); ++i) {
                for (std::size_t j = i + 1; j < a->members.size(); ++j) {
                    const auto x = g.node_of(a->members[i]);
                    const auto y = g.node_of(a->members[j]);
                    if (x && y && *x != *y) {
                        asserted.emplace(std::min(*x, *y), std::max(*x, *y));
                    }
                }
            }
        } else if (const auto* a = std::get_if<ClassAssertion>(&axiom)) {
            if (const auto n = g.node_of(a->type)) {
                auto& inst = g.nodes[*n].instances;
                if (std::find(inst.begin(), inst.end(), a->individual) == inst.end()) {
                    inst.push_back(a->individual);
                }
            }
        } else if (const auto* a = std::get_if<LabelAnnotation>(&axiom)) {
            if (const auto n = g.node_of(ClassExpression::named(a->subject))) {
                g.nodes[*n].labels.push_back(a->text);
            }
        } else if (const auto* a = std::get_if<EquivalentClasses>(&axiom)) {
            if (a->members.size() > 1) {
                for (const auto& m : a->members) {
                    if (const auto n = g.node_of(m); n && m.is_named()) {
                        g.nodes[*n].kind = NodeKind::Defined;
                    }
                }
            }
        }
    }

    for (const auto& [iri, info] : props) {
        PropertyDescriptor d;
        d.iri = iri;
        d.is_data_property = info.is_data;
        d.range_datatypes = info.datatypes;
        d.functional = info.functional;
        d.transitive = info.transitive;
        d.inverses.assign(info.inverses.begin(), info.inverses.end());
        d.super_properties.assign(info.supers.begin(), info.supers.end());
        bool range_approx = false;
        for (const auto& r : info.ranges) {
            for (const auto n : resolve(g, r, reasoner, range_approx)) {
                d.range_nodes.push_back(n);
            }
        }
        std::sort(d.range_nodes.begin(), d.range_nodes.end());
        d.range_nodes.erase(std::unique(d.range_nodes.begin(), d.range_nodes.end()), d.range_nodes.end());

        std::vector<std::pair<std::size_t, bool>> targets;
        if (info.domains.empty()) {
            targets.emplace_back(OntoGraph::kThing, false);
        }
        for (const auto& dom : info.domains) {
            bool approx = false;
            for (const auto n : resolve(g, dom, reasoner, approx)) {
                targets.emplace_back(n, approx);
            }
        }
        std::sort(targets.begin(), targets.end());
        for (std::size_t k = 0; k < targets.size(); ++k) {
            if (k > 0 && targets[k].first == targets[k - 1].first) {
                continue;
            }
            auto here = d;
            here.approximate = targets[k].second || range_approx;
            g.nodes[targets[k].first].properties.push_back(here);
            for (const auto t : d.range_nodes) {
                g.range_edges.push_back({targets[k].first, iri, t});
            }
        }
    }

    // Inferred disjointness between siblings.
    std::set<std::pair<std::size_t, std::size_t>> inferred;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const auto& cs = g.nodes[n].children;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                const auto key = std::make_pair(std::min(cs[i], cs[j]), std::max(cs[i], cs[j]));
                if (g.excluded(key.first) || g.excluded(key.second) || asserted.contains(key) ||
                    inferred.contains(key)) {
                    continue;
                }
                const auto both = ClassExpression::conjunction({g.expression(key.first), g.expression(key.second)});
                if (reasoner.is_unsatisfiable(both)) {
                    inferred.insert(key);
                }
            }
        }
    }
    for (const auto& [a, b] : asserted) {
        g.disjoint_pairs.push_back({a, b, false});
    }
    for (const auto& [a, b] : inferred) {
        g.disjoint_pairs.push_back({a, b, true});
    }
    for (const auto& d : g.disjoint_pairs) {
        g.nodes[d.a].disjoint_with.push_back(d.b);
        g.nodes[d.b].disjoint_with.push_back(d.a);
    }
    for (auto& n : g.nodes) {
        std::sort(n.instances.begin(), n.instances.end());
        std::sort(n.labels.begin(), n.labels.end());
        n.labels.erase(std::unique(n.labels.begin(), n.labels.end()), n.labels.end());
    }
}

OntoGraph build_graph(const Ontology& ontology, const Taxonomy& taxonomy, std::span<const ClassExpression> harvested,
                      const DetailWindow& window, const Reasoner& reasoner) {
    OntoGraph g = build_scaffold(taxonomy);
    place_expressions(g, harvested, window, reasoner);
    attach_annotations(g, ontology, reasoner);
    // Nothing sits below every leaf.
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.nodes[i].unsatisfiable) {
            continue;
        }
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (j != i && g.nodes[j].children.empty()) {
                g.add_edge(i, j);
            }
        }
    }
    g.finalize();
    return g;
}

}  // namespace ontoview
