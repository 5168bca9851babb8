#include "ontoview/onto_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "ontoview/functional_syntax.hpp"
#include "ontoview/reasoner.hpp"

namespace ontoview {

std::string_view to_string(NodeKind kind) noexcept {
    switch (kind) {
    case NodeKind::Primitive:
        return "primitive";
    case NodeKind::Defined:
        return "defined";
    case NodeKind::Anonymous:
        return "anonymous";
    }
    return "primitive";
}

std::string stable_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::optional<std::size_t> OntoGraph::node_of(const ClassExpression& ce) const {
    if (auto it = member_index_.find(ce); it != member_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<std::size_t> OntoGraph::find(std::string_view id) const {
    if (auto it = id_index_.find(std::string(id)); it != id_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> OntoGraph::isa_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (const auto p : nodes[i].parents) {
            out.emplace_back(i, p);
        }
    }
    return out;
}

bool OntoGraph::is_descendant(std::size_t d, std::size_t ancestor) const {
    const auto& list = descendants_[ancestor];
    return std::binary_search(list.begin(), list.end(), d);
}

void OntoGraph::add_edge(std::size_t child, std::size_t parent) {
    auto& ps = nodes[child].parents;
    if (std::find(ps.begin(), ps.end(), parent) != ps.end()) {
        return;
    }
    ps.push_back(parent);
    nodes[parent].children.push_back(child);
}

void OntoGraph::remove_edge(std::size_t child, std::size_t parent) {
    auto& ps = nodes[child].parents;
    ps.erase(std::remove(ps.begin(), ps.end(), parent), ps.end());
    auto& cs = nodes[parent].children;
    cs.erase(std::remove(cs.begin(), cs.end(), child), cs.end());
}

std::size_t OntoGraph::add_node(OntoNode node) {
    const std::size_t i = nodes.size();
    for (const auto& m : node.members) {
        member_index_[m] = i;
    }
    nodes.push_back(std::move(node));
    return i;
}

void OntoGraph::add_member(std::size_t node, const ClassExpression& ce) {
    auto& ms = nodes[node].members;
    if (std::find(ms.begin(), ms.end(), ce) == ms.end()) {
        ms.insert(std::upper_bound(ms.begin(), ms.end(), ce), ce);
    }
    member_index_[ce] = node;
}

void OntoGraph::reindex() {
    member_index_.clear();
    id_index_.clear();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (const auto& m : nodes[i].members) {
            member_index_[m] = i;
        }
        id_index_[nodes[i].id] = i;
    }
}

void OntoGraph::finalize() {
    for (auto& n : nodes) {
        std::sort(n.members.begin(), n.members.end());
        n.expression = choose_representative(n.members);
        n.label = render(n.expression);
        const bool named = std::any_of(n.members.begin(), n.members.end(),
                                       [](const ClassExpression& m) { return m.is_atomic(); });
        if (!named) {
            n.kind = NodeKind::Anonymous;
        } else if (n.members.size() > 1) {
            n.kind = NodeKind::Defined;
        } else if (n.kind == NodeKind::Anonymous) {
            n.kind = NodeKind::Primitive;
        }
        n.equivalents.clear();
        for (const auto& m : n.members) {
            if (m != n.expression) {
                n.equivalents.push_back(render(m));
            }
        }
        std::sort(n.equivalents.begin(), n.equivalents.end());
        n.id = "n" + stable_hash(to_functional(n.expression));
    }

    // Thing first, then by label and id; ids made unique in that order.
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t thing = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].expression.kind() == ExprKind::Thing) {
            thing = i;
        }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if ((a == thing) != (b == thing)) {
            return a == thing;
        }
        return std::tie(nodes[a].label, nodes[a].id) < std::tie(nodes[b].label, nodes[b].id);
    });
    std::vector<std::size_t> pos(nodes.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        pos[order[k]] = k;
    }
    auto remap = [&](std::vector<std::size_t>& v) {
        for (auto& x : v) {
            x = pos[x];
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    std::vector<OntoNode> sorted;
    sorted.reserve(nodes.size());
    for (const auto i : order) {
        sorted.push_back(std::move(nodes[i]));
    }
    nodes = std::move(sorted);
    for (auto& n : nodes) {
        remap(n.parents);
        remap(n.children);
        remap(n.disjoint_with);
        for (auto& p : n.properties) {
            remap(p.range_nodes);
        }
    }
    for (auto& e : range_edges) {
        e.domain_node = pos[e.domain_node];
        e.target = pos[e.target];
    }
    for (auto& d : disjoint_pairs) {
        d.a = pos[d.a];
        d.b = pos[d.b];
        if (d.a > d.b) {
            std::swap(d.a, d.b);
        }
    }
    std::sort(range_edges.begin(), range_edges.end(), [](const RangeEdge& x, const RangeEdge& y) {
        return std::tie(x.domain_node, x.property, x.target) < std::tie(y.domain_node, y.property, y.target);
    });
    std::sort(disjoint_pairs.begin(), disjoint_pairs.end(), [](const DisjointPair& x, const DisjointPair& y) {
        return std::tie(x.a, x.b, x.inferred) < std::tie(y.a, y.b, y.inferred);
    });

    std::unordered_map<std::string, int> seen;
    for (auto& n : nodes) {
        const int k = seen[n.id]++;
        if (k > 0) {
            n.id += "-" + std::to_string(k);
        }
    }
    reindex();

    // Descendant and ancestor sets in topological order.
    const std::size_t count = nodes.size();
    std::vector<std::size_t> indegree(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        indegree[i] = nodes[i].parents.size();
    }
    std::vector<std::size_t> topo;
    for (std::size_t i = 0; i < count; ++i) {
        if (indegree[i] == 0) {
            topo.push_back(i);
        }
    }
    for (std::size_t k = 0; k < topo.size(); ++k) {
        for (const auto c : nodes[topo[k]].children) {
            if (--indegree[c] == 0) {
                topo.push_back(c);
            }
        }
    }
    if (topo.size() != count) {
        throw std::logic_error("isA edges contain a cycle");
    }
    ancestors_.assign(count, {});
    descendants_.assign(count, {});
    for (const auto i : topo) {
        auto& anc = ancestors_[i];
        for (const auto p : nodes[i].parents) {
            anc.push_back(p);
            anc.insert(anc.end(), ancestors_[p].begin(), ancestors_[p].end());
        }
        std::sort(anc.begin(), anc.end());
        anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
    }
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        auto& desc = descendants_[*it];
        for (const auto c : nodes[*it].children) {
            desc.push_back(c);
            desc.insert(desc.end(), descendants_[c].begin(), descendants_[c].end());
        }
        std::sort(desc.begin(), desc.end());
        desc.erase(std::unique(desc.begin(), desc.end()), desc.end());
        nodes[*it].total_descendants = desc.size();
    }
}

}  // namespace ontoview
