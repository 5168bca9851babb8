#include "naive_el.hpp"

#include <algorithm>
#include <stdexcept>

namespace ontoview::testing {

NaiveEl::NaiveEl(const Ontology& ontology, const std::vector<ClassExpression>& extra) {
    atom(ClassExpression::thing());
    atom(ClassExpression::nothing());
    for (const auto& iri : ontology.signature().classes) {
        atom(ClassExpression::named(iri));
    }
    for (const auto& a : ontology.axioms()) {
        axiom(a);
    }
    for (const auto& ce : extra) {
        atom(ce);
    }
    run();
}

std::size_t NaiveEl::atom(const ClassExpression& ce) {
    if (auto it = index_.find(ce); it != index_.end()) {
        return it->second;
    }
    std::vector<std::size_t> kids;
    switch (ce.kind()) {
    case ExprKind::And:
    case ExprKind::Or:
        for (const auto& op : ce.operands()) {
            kids.push_back(atom(op));
        }
        break;
    case ExprKind::Not:
        atom(ce.operand());
        break;
    case ExprKind::Exists:
    case ExprKind::ForAll:
    case ExprKind::MinCard:
    case ExprKind::MaxCard:
    case ExprKind::ExactCard:
        kids.push_back(atom(ce.filler()));
        break;
    default:
        break;
    }
    const std::size_t x = atoms_.size();
    atoms_.push_back(ce);
    index_.emplace(ce, x);
    if (ce.kind() == ExprKind::And) {
        for (const auto k : kids) {
            sub_.emplace_back(x, k);
        }
        conj_.push_back({kids, x});
    } else if (ce.kind() == ExprKind::Or) {
        for (const auto k : kids) {
            sub_.emplace_back(k, x);
        }
    } else if (ce.kind() == ExprKind::Exists) {
        right_.push_back({x, ce.role(), kids[0]});
        left_.push_back({kids[0], ce.role(), x});
    }
    return x;
}

std::size_t NaiveEl::lookup(const ClassExpression& ce) const {
    auto it = index_.find(ce);
    if (it == index_.end()) {
        throw std::out_of_range("expression not known to the oracle");
    }
    return it->second;
}

void NaiveEl::axiom(const Axiom& a) {
    if (const auto* s = std::get_if<SubClassOf>(&a)) {
        sub_.emplace_back(atom(s->sub), atom(s->sup));
    } else if (const auto* e = std::get_if<EquivalentClasses>(&a)) {
        for (std::size_t i = 1; i < e->members.size(); ++i) {
            sub_.emplace_back(atom(e->members[0]), atom(e->members[i]));
            sub_.emplace_back(atom(e->members[i]), atom(e->members[0]));
        }
    } else if (const auto* d = std::get_if<DisjointClasses>(&a)) {
        for (std::size_t i = 0; i < d->members.size(); ++i) {
            for (std::size_t j = i + 1; j < d->members.size(); ++j) {
                conj_.push_back({{atom(d->members[i]), atom(d->members[j])}, 1});
            }
        }
    } else if (const auto* p = std::get_if<PropertyDomain>(&a)) {
        if (!p->data_property) {
            sub_.emplace_back(atom(ClassExpression::some(p->property, ClassExpression::thing())), atom(p->domain));
        }
    } else if (const auto* sp = std::get_if<SubPropertyOf>(&a)) {
        role_sub_.emplace_back(sp->sub, sp->sup);
    } else if (const auto* c = std::get_if<PropertyCharacteristic>(&a)) {
        if (c->trait == PropertyTrait::Transitive) {
            transitive_.insert(c->property);
        }
    }
}

void NaiveEl::run() {
    const std::size_t n = atoms_.size();
    s_.assign(n, {});
    for (std::size_t x = 0; x < n; ++x) {
        s_[x] = {x, 0};
    }
    bool changed = true;
    auto add = [&](std::size_t x, std::size_t b) {
        if (s_[x].insert(b).second) {
            changed = true;
        }
    };
    auto link = [&](const Iri& r, std::size_t x, std::size_t y) {
        if (r_[r].insert({x, y}).second) {
            changed = true;
        }
    };
    while (changed) {
        changed = false;
        for (std::size_t x = 0; x < n; ++x) {
            for (const auto& [a, b] : sub_) {
                if (s_[x].contains(a)) {
                    add(x, b);
                }
            }
            for (const auto& c : conj_) {
                if (std::all_of(c.lhs.begin(), c.lhs.end(), [&](std::size_t a) { return s_[x].contains(a); })) {
                    add(x, c.rhs);
                }
            }
            for (const auto& e : right_) {
                if (s_[x].contains(e.lhs)) {
                    link(e.role, x, e.rhs);
                }
            }
        }
        auto snapshot = r_;
        for (const auto& [r, pairs] : snapshot) {
            for (const auto& [x, y] : pairs) {
                for (const auto& e : left_) {
                    if (e.role == r && s_[y].contains(e.lhs)) {
                        add(x, e.rhs);
                    }
                }
                if (s_[y].contains(1)) {
                    add(x, 1);
                }
                for (const auto& [sub, sup] : role_sub_) {
                    if (sub == r) {
                        link(sup, x, y);
                    }
                }
                if (transitive_.contains(r)) {
                    for (const auto& [y2, z] : pairs) {
                        if (y2 == y) {
                            link(r, x, z);
                        }
                    }
                }
            }
        }
    }
}

bool NaiveEl::subsumes(const ClassExpression& sup, const ClassExpression& sub) const {
    const auto& s = s_[lookup(sub)];
    return s.contains(lookup(sup)) || s.contains(1);
}

bool NaiveEl::unsatisfiable(const ClassExpression& ce) const {
    return s_[lookup(ce)].contains(1);
}

bool NaiveEl::inconsistent() const {
    return s_[0].contains(1);
}

std::set<std::pair<ClassExpression, ClassExpression>> NaiveEl::named_subsumptions() const {
    std::set<std::pair<ClassExpression, ClassExpression>> out;
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
        if (!atoms_[a].is_atomic()) {
            continue;
        }
        for (std::size_t b = 0; b < atoms_.size(); ++b) {
            if (atoms_[b].is_atomic() && (s_[a].contains(b) || s_[a].contains(1))) {
                out.emplace(atoms_[a], atoms_[b]);
            }
        }
    }
    return out;
}

}  // namespace ontoview::testing
