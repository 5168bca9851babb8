#include "ontoview/reasoner.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace ontoview {

std::optional<AtomId> RuleSet::find(const ClassExpression& ce) const {
    if (auto it = index_.find(ce); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<RoleId> RuleSet::find_role(const Iri& iri) const {
    if (auto it = role_index_.find(iri); it != role_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Normalization

class Normalizer {
public:
    explicit Normalizer(const Ontology& ontology) : ontology_(ontology) {
        add_atom(ClassExpression::thing());
        add_atom(ClassExpression::nothing());
        for (const auto& iri : ontology.signature().classes) {
            add_atom(ClassExpression::named(iri));
        }
        for (const auto& iri : ontology.signature().object_properties) {
            rs_.role_index_.emplace(iri, static_cast<RoleId>(rs_.roles_.size()));
            rs_.roles_.push_back(iri);
        }
    }

    RuleSet run(std::span<const ClassExpression> registered) {
        for (const auto& ce : registered) {
            check(ce);
        }
        for (const auto& axiom : ontology_.axioms()) {
            told(axiom);
        }
        for (const auto& ce : registered) {
            atom_for(ce);
        }
        std::sort(rs_.rules_.begin(), rs_.rules_.end());
        rs_.rules_.erase(std::unique(rs_.rules_.begin(), rs_.rules_.end()), rs_.rules_.end());
        return std::move(rs_);
    }

private:
    AtomId add_atom(const ClassExpression& ce) {
        const auto id = static_cast<AtomId>(rs_.atoms_.size());
        rs_.atoms_.push_back(ce);
        rs_.index_.emplace(ce, id);
        return id;
    }

    void check(const ClassExpression& ce) const {
        ce.for_each_iri([this](const Iri& iri, bool is_role) {
            const bool known = is_role ? rs_.role_index_.contains(iri)
                                       : rs_.index_.contains(ClassExpression::named(iri));
            if (!known) {
                throw UnknownIriError(iri);
            }
        });
    }

    RoleId role(const Iri& iri) const {
        auto it = rs_.role_index_.find(iri);
        if (it == rs_.role_index_.end()) {
            throw UnknownIriError(iri);
        }
        return it->second;
    }

    void rule(NormalRule::Form form, AtomId lhs, AtomId lhs2, RoleId r, AtomId rhs) {
        rs_.rules_.push_back({form, lhs, lhs2, r, rhs});
    }
    void sub(AtomId a, AtomId b) {
        if (a != b) {
            rule(NormalRule::Form::Subsumption, a, 0, 0, b);
        }
    }

    AtomId atom_for(const ClassExpression& ce) {
        if (auto found = rs_.find(ce)) {
            return *found;
        }
        if (ce.is_atomic()) {
            throw UnknownIriError(ce.iri());
        }
        const AtomId x = add_atom(ce);
        switch (ce.kind()) {
        case ExprKind::And:
            for (const auto& op : ce.operands()) {
                emit_right(x, op);
            }
            emit_left_and(ce.operands(), x);
            break;
        case ExprKind::Exists: {
            const RoleId r = role(ce.role());
            const AtomId f = atom_for(ce.filler());
            rule(NormalRule::Form::ExistsRight, x, 0, r, f);
            rule(NormalRule::Form::ExistsLeft, f, 0, r, x);
            break;
        }
        case ExprKind::Or:
            for (const auto& op : ce.operands()) {
                emit_left(op, x);
            }
            break;
        default:
            // Not, ForAll and cardinality restrictions are opaque.
            break;
        }
        return x;
    }

    /// src ⊑ ce
    void emit_right(AtomId src, const ClassExpression& ce) {
        switch (ce.kind()) {
        case ExprKind::Thing:
            return;
        case ExprKind::Nothing:
        case ExprKind::Atomic:
            sub(src, atom_for(ce));
            return;
        case ExprKind::And:
            for (const auto& op : ce.operands()) {
                emit_right(src, op);
            }
            return;
        case ExprKind::Exists:
            rule(NormalRule::Form::ExistsRight, src, 0, role(ce.role()), atom_for(ce.filler()));
            return;
        default:
            sub(src, atom_for(ce));
            return;
        }
    }

    /// ce ⊑ target
    void emit_left(const ClassExpression& ce, AtomId target) {
        switch (ce.kind()) {
        case ExprKind::Nothing:
            return;
        case ExprKind::Thing:
        case ExprKind::Atomic:
            sub(atom_for(ce), target);
            return;
        case ExprKind::And:
            emit_left_and(ce.operands(), target);
            return;
        case ExprKind::Exists:
            rule(NormalRule::Form::ExistsLeft, atom_for(ce.filler()), 0, role(ce.role()), target);
            return;
        default:
            sub(atom_for(ce), target);
            return;
        }
    }

    void emit_left_and(std::span<const ClassExpression> ops, AtomId target) {
        const AtomId last = atom_for(ops.back());
        AtomId rest = 0;
        if (ops.size() == 2) {
            rest = atom_for(ops.front());
        } else {
            rest = atom_for(ClassExpression::conjunction({ops.begin(), ops.end() - 1}));
        }
        rule(NormalRule::Form::Conjunction, rest, last, 0, target);
    }

    void subclass(const ClassExpression& c, const ClassExpression& d) {
        if (d.kind() == ExprKind::Thing || c.kind() == ExprKind::Nothing || c == d) {
            return;
        }
        if (c.is_atomic()) {
            emit_right(atom_for(c), d);
        } else if (d.is_atomic()) {
            emit_left(c, atom_for(d));
        } else {
            emit_right(atom_for(c), d);
        }
    }

    void told(const Axiom& axiom) {
        if (const auto* a = std::get_if<SubClassOf>(&axiom)) {
            subclass(a->sub, a->sup);
        } else if (const auto* a = std::get_if<EquivalentClasses>(&axiom)) {
            for (std::size_t i = 1; i < a->members.size(); ++i) {
                subclass(a->members[0], a->members[i]);
                subclass(a->members[i], a->members[0]);
            }
        } else if (const auto* a = std::get_if<DisjointClasses>(&axiom)) {
            for (std::size_t i = 0; i < a->members.size(); ++i) {
                for (std::size_t j = i + 1; j < a->members.size(); ++j) {
                    rule(NormalRule::Form::Conjunction, atom_for(a->members[i]), atom_for(a->members[j]), 0,
                         kBottomAtom);
                }
            }
        } else if (const auto* a = std::get_if<PropertyDomain>(&axiom)) {
            if (!a->data_property) {
                subclass(ClassExpression::some(a->property, ClassExpression::thing()), a->domain);
            }
        } else if (const auto* a = std::get_if<SubPropertyOf>(&axiom)) {
            rs_.role_inclusions_.emplace_back(role(a->sub), role(a->sup));
        } else if (const auto* a = std::get_if<PropertyCharacteristic>(&axiom)) {
            if (a->trait == PropertyTrait::Transitive) {
                rs_.transitive_.insert(role(a->property));
            }
        }
    }

    const Ontology& ontology_;
    RuleSet rs_;
};

RuleSet normalize(const Ontology& ontology, std::span<const ClassExpression> registered) {
    return Normalizer(ontology).run(registered);
}

// ---------------------------------------------------------------------------
// Saturation

namespace {

struct Indexes {
    std::vector<std::vector<AtomId>> told;
    std::vector<std::vector<std::pair<AtomId, AtomId>>> conj;
    std::vector<std::vector<std::pair<RoleId, AtomId>>> exists_right;
    std::vector<std::vector<std::pair<RoleId, AtomId>>> exists_left;
    std::vector<std::vector<RoleId>> super_roles;
    std::vector<char> transitive;

    explicit Indexes(const RuleSet& rs) {
        const std::size_t n = rs.atom_count();
        told.resize(n);
        conj.resize(n);
        exists_right.resize(n);
        exists_left.resize(n);
        for (const auto& r : rs.rules()) {
            switch (r.form) {
            case NormalRule::Form::Subsumption:
                told[r.lhs].push_back(r.rhs);
                break;
            case NormalRule::Form::Conjunction:
                conj[r.lhs].emplace_back(r.lhs2, r.rhs);
                conj[r.lhs2].emplace_back(r.lhs, r.rhs);
                break;
            case NormalRule::Form::ExistsRight:
                exists_right[r.lhs].emplace_back(r.role, r.rhs);
                break;
            case NormalRule::Form::ExistsLeft:
                exists_left[r.lhs].emplace_back(r.role, r.rhs);
                break;
            }
        }
        const std::size_t roles = rs.role_count();
        std::vector<std::vector<RoleId>> direct(roles);
        for (const auto& [s, t] : rs.role_inclusions()) {
            direct[s].push_back(t);
        }
        super_roles.resize(roles);
        transitive.assign(roles, 0);
        for (RoleId r = 0; r < roles; ++r) {
            transitive[r] = rs.is_transitive(r) ? 1 : 0;
            std::vector<char> seen(roles, 0);
            std::vector<RoleId> stack{r};
            seen[r] = 1;
            while (!stack.empty()) {
                const RoleId cur = stack.back();
                stack.pop_back();
                super_roles[r].push_back(cur);
                for (const RoleId up : direct[cur]) {
                    if (!seen[up]) {
                        seen[up] = 1;
                        stack.push_back(up);
                    }
                }
            }
            std::sort(super_roles[r].begin(), super_roles[r].end());
        }
    }
};

}  // namespace

struct Reasoner::State {
    RuleSet rules;
    Indexes idx;
    std::size_t n;
    std::size_t words;
    std::vector<std::uint64_t> bits;
    std::vector<std::vector<AtomId>> members;
    std::vector<std::vector<std::pair<RoleId, AtomId>>> succ;
    std::vector<std::vector<std::pair<RoleId, AtomId>>> pred;
    std::unordered_set<std::uint64_t> link_keys;

    struct AtomEvent {
        AtomId ctx;
        AtomId atom;
    };
    struct LinkEvent {
        AtomId from;
        RoleId role;
        AtomId to;
    };
    std::vector<AtomEvent> atom_queue;
    std::vector<LinkEvent> link_queue;

    explicit State(RuleSet rs)
        : rules(std::move(rs)),
          idx(rules),
          n(rules.atom_count()),
          words((n + 63) / 64),
          bits(n * words, 0),
          members(n),
          succ(n),
          pred(n) {}

    bool has(AtomId ctx, AtomId atom) const {
        return (bits[ctx * words + atom / 64] >> (atom % 64)) & 1U;
    }

    void push(AtomId ctx, AtomId atom) {
        auto& word = bits[ctx * words + atom / 64];
        const std::uint64_t mask = std::uint64_t{1} << (atom % 64);
        if (word & mask) {
            return;
        }
        word |= mask;
        members[ctx].push_back(atom);
        atom_queue.push_back({ctx, atom});
    }

    std::uint64_t key(AtomId from, RoleId role, AtomId to) const {
        return (static_cast<std::uint64_t>(from) * rules.role_count() + role) * n + to;
    }

    void link(AtomId from, RoleId role, AtomId to) {
        for (const RoleId s : idx.super_roles[role]) {
            link_single(from, s, to);
        }
    }

    void link_single(AtomId from, RoleId role, AtomId to) {
        if (!link_keys.insert(key(from, role, to)).second) {
            return;
        }
        succ[from].emplace_back(role, to);
        pred[to].emplace_back(role, from);
        link_queue.push_back({from, role, to});
    }

    void process_atom(AtomId ctx, AtomId atom) {
        if (atom == kBottomAtom) {
            for (std::size_t i = 0; i < pred[ctx].size(); ++i) {
                push(pred[ctx][i].second, kBottomAtom);
            }
        }
        for (const AtomId c : idx.told[atom]) {
            push(ctx, c);
        }
        for (const auto& [other, c] : idx.conj[atom]) {
            if (has(ctx, other)) {
                push(ctx, c);
            }
        }
        for (const auto& [r, target] : idx.exists_right[atom]) {
            link(ctx, r, target);
        }
        for (const auto& [r, c] : idx.exists_left[atom]) {
            for (std::size_t i = 0; i < pred[ctx].size(); ++i) {
                if (pred[ctx][i].first == r) {
                    push(pred[ctx][i].second, c);
                }
            }
        }
    }

    void process_link(const LinkEvent& e) {
        if (has(e.to, kBottomAtom)) {
            push(e.from, kBottomAtom);
        }
        for (std::size_t i = 0; i < members[e.to].size(); ++i) {
            for (const auto& [r, c] : idx.exists_left[members[e.to][i]]) {
                if (r == e.role) {
                    push(e.from, c);
                }
            }
        }
        if (idx.transitive[e.role]) {
            for (std::size_t i = 0; i < succ[e.to].size(); ++i) {
                const auto [r, next] = succ[e.to][i];
                if (r == e.role) {
                    link_single(e.from, e.role, next);
                }
            }
            for (std::size_t i = 0; i < pred[e.from].size(); ++i) {
                const auto [r, prev] = pred[e.from][i];
                if (r == e.role) {
                    link_single(prev, e.role, e.to);
                }
            }
        }
    }

    void saturate() {
        for (AtomId x = 0; x < n; ++x) {
            push(x, x);
            push(x, kTopAtom);
        }
        while (!atom_queue.empty() || !link_queue.empty()) {
            if (!link_queue.empty()) {
                const LinkEvent e = link_queue.back();
                link_queue.pop_back();
                process_link(e);
                continue;
            }
            const AtomEvent e = atom_queue.back();
            atom_queue.pop_back();
            process_atom(e.ctx, e.atom);
        }
        atom_queue.shrink_to_fit();
        link_queue.shrink_to_fit();
    }
};

// ---------------------------------------------------------------------------
// Queries on unregistered expressions

namespace {

/// Either a saturated global context or a context built for one query.
struct Target {
    bool local = false;
    std::uint32_t id = 0;
};

class LocalQuery {
public:
    explicit LocalQuery(const Reasoner::State& st) : st_(st) {}

    Target context_for(const ClassExpression& ce) {
        if (auto atom = st_.rules.find(ce)) {
            return {false, *atom};
        }
        const auto idx = static_cast<std::uint32_t>(arena_.size());
        arena_.emplace_back();
        arena_[idx].bits.assign(st_.words, 0);
        seed(idx, ce);
        saturate(idx);
        return {true, idx};
    }

    bool entails(Target t, const ClassExpression& d) {
        if (has(t, kBottomAtom)) {
            return true;
        }
        if (auto atom = st_.rules.find(d); atom && has(t, *atom)) {
            return true;
        }
        switch (d.kind()) {
        case ExprKind::Thing:
            return true;
        case ExprKind::And:
            return std::all_of(d.operands().begin(), d.operands().end(),
                               [&](const ClassExpression& op) { return entails(t, op); });
        case ExprKind::Or:
            return std::any_of(d.operands().begin(), d.operands().end(),
                               [&](const ClassExpression& op) { return entails(t, op); });
        case ExprKind::Exists: {
            const auto role = st_.rules.find_role(d.role());
            if (!role) {
                return false;
            }
            const auto targets = links(t);
            for (const auto& [r, next] : targets) {
                if (r == *role && entails(next, d.filler())) {
                    return true;
                }
            }
            return false;
        }
        default:
            return false;
        }
    }

private:
    struct Context {
        std::vector<std::uint64_t> bits;
        std::vector<AtomId> atoms;
        std::vector<std::pair<RoleId, Target>> links;
        std::unordered_set<std::uint64_t> link_keys;
    };

    bool has(Target t, AtomId atom) const {
        if (!t.local) {
            return st_.has(t.id, atom);
        }
        return (arena_[t.id].bits[atom / 64] >> (atom % 64)) & 1U;
    }

    std::vector<AtomId> atoms(Target t) const {
        return t.local ? arena_[t.id].atoms : st_.members[t.id];
    }

    std::vector<std::pair<RoleId, Target>> links(Target t) const {
        if (t.local) {
            return arena_[t.id].links;
        }
        std::vector<std::pair<RoleId, Target>> out;
        out.reserve(st_.succ[t.id].size());
        for (const auto& [r, y] : st_.succ[t.id]) {
            out.emplace_back(r, Target{false, y});
        }
        return out;
    }

    void push(std::uint32_t idx, AtomId atom) {
        auto& word = arena_[idx].bits[atom / 64];
        const std::uint64_t mask = std::uint64_t{1} << (atom % 64);
        if (word & mask) {
            return;
        }
        word |= mask;
        arena_[idx].atoms.push_back(atom);
        queue_.push_back(atom);
    }

    void add_link(std::uint32_t idx, RoleId role, Target to) {
        for (const RoleId s : st_.idx.super_roles[role]) {
            add_link_single(idx, s, to);
        }
    }

    void add_link_single(std::uint32_t idx, RoleId role, Target to) {
        const std::uint64_t k = ((static_cast<std::uint64_t>(to.id) * 2 + (to.local ? 1 : 0)) << 20) ^ role;
        if (!arena_[idx].link_keys.insert(k).second) {
            return;
        }
        arena_[idx].links.emplace_back(role, to);
        link_queue_.emplace_back(role, to);
    }

    void seed(std::uint32_t idx, const ClassExpression& ce) {
        if (auto atom = st_.rules.find(ce)) {
            for (const AtomId a : st_.members[*atom]) {
                push(idx, a);
            }
            return;
        }
        switch (ce.kind()) {
        case ExprKind::And:
            for (const auto& op : ce.operands()) {
                seed(idx, op);
            }
            return;
        case ExprKind::Exists: {
            const auto role = st_.rules.find_role(ce.role());
            if (!role) {
                throw UnknownIriError(ce.role());
            }
            const Target filler = context_for(ce.filler());
            add_link(idx, *role, filler);
            return;
        }
        case ExprKind::Or: {
            // Subsumers common to every operand.
            std::vector<AtomId> common;
            bool first = true;
            for (const auto& op : ce.operands()) {
                const Target t = context_for(op);
                if (has(t, kBottomAtom)) {
                    continue;
                }
                std::vector<AtomId> mine = atoms(t);
                std::sort(mine.begin(), mine.end());
                if (first) {
                    common = std::move(mine);
                    first = false;
                } else {
                    std::vector<AtomId> both;
                    std::set_intersection(common.begin(), common.end(), mine.begin(), mine.end(),
                                          std::back_inserter(both));
                    common = std::move(both);
                }
            }
            if (first) {
                push(idx, kBottomAtom);
            }
            for (const AtomId a : common) {
                push(idx, a);
            }
            return;
        }
        default:
            // Unregistered opaque constructors carry no told knowledge.
            push(idx, kTopAtom);
            return;
        }
    }

    void saturate(std::uint32_t idx) {
        push(idx, kTopAtom);
        while (!queue_.empty() || !link_queue_.empty()) {
            if (!link_queue_.empty()) {
                const auto [role, to] = link_queue_.back();
                link_queue_.pop_back();
                if (has(to, kBottomAtom)) {
                    push(idx, kBottomAtom);
                }
                for (const AtomId b : atoms(to)) {
                    for (const auto& [r, c] : st_.idx.exists_left[b]) {
                        if (r == role) {
                            push(idx, c);
                        }
                    }
                }
                if (st_.idx.transitive[role]) {
                    for (const auto& [r, next] : links(to)) {
                        if (r == role) {
                            add_link_single(idx, role, next);
                        }
                    }
                }
                continue;
            }
            const AtomId atom = queue_.back();
            queue_.pop_back();
            for (const AtomId c : st_.idx.told[atom]) {
                push(idx, c);
            }
            for (const auto& [other, c] : st_.idx.conj[atom]) {
                if ((arena_[idx].bits[other / 64] >> (other % 64)) & 1U) {
                    push(idx, c);
                }
            }
            for (const auto& [r, target] : st_.idx.exists_right[atom]) {
                add_link(idx, r, Target{false, target});
            }
        }
    }

    const Reasoner::State& st_;
    std::vector<Context> arena_;
    std::vector<AtomId> queue_;
    std::vector<std::pair<RoleId, Target>> link_queue_;
};

}  // namespace

Reasoner::Reasoner(const Ontology& ontology, std::span<const ClassExpression> registered)
    : Reasoner(normalize(ontology, registered)) {}

Reasoner::Reasoner(RuleSet rules) : state_(std::make_unique<State>(std::move(rules))) {
    state_->saturate();
}

Reasoner::~Reasoner() = default;
Reasoner::Reasoner(Reasoner&&) noexcept = default;
Reasoner& Reasoner::operator=(Reasoner&&) noexcept = default;

const RuleSet& Reasoner::rules() const noexcept {
    return state_->rules;
}

bool Reasoner::is_consistent() const {
    return !state_->has(kTopAtom, kBottomAtom);
}

void Reasoner::check_signature(const ClassExpression& ce) const {
    ce.for_each_iri([this](const Iri& iri, bool is_role) {
        const bool known = is_role ? state_->rules.find_role(iri).has_value()
                                   : state_->rules.find(ClassExpression::named(iri)).has_value();
        if (!known) {
            throw UnknownIriError(iri);
        }
    });
}

bool Reasoner::is_subsumed(const ClassExpression& sub, const ClassExpression& sup) const {
    check_signature(sub);
    check_signature(sup);
    if (sub == sup || sup.kind() == ExprKind::Thing || sub.kind() == ExprKind::Nothing) {
        return true;
    }
    const auto a = state_->rules.find(sub);
    const auto b = state_->rules.find(sup);
    if (a && b) {
        if (state_->has(*a, *b) || state_->has(*a, kBottomAtom)) {
            return true;
        }
        if (sup.is_el()) {
            return false;
        }
    }
    if (!a && sub.kind() == ExprKind::Or) {
        return std::all_of(sub.operands().begin(), sub.operands().end(),
                           [&](const ClassExpression& op) { return is_subsumed(op, sup); });
    }
    LocalQuery query(*state_);
    const Target t = query.context_for(sub);
    return query.entails(t, sup);
}

bool Reasoner::is_equivalent(const ClassExpression& a, const ClassExpression& b) const {
    return is_subsumed(a, b) && is_subsumed(b, a);
}

bool Reasoner::is_unsatisfiable(const ClassExpression& ce) const {
    return is_subsumed(ce, ClassExpression::nothing());
}

std::vector<AtomId> Reasoner::subsumers(AtomId atom) const {
    std::vector<AtomId> out = state_->members.at(atom);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Classification

ClassExpression choose_representative(std::span<const ClassExpression> members) {
    const ClassExpression* best = nullptr;
    for (const auto& m : members) {
        if (m.kind() == ExprKind::Thing || m.kind() == ExprKind::Nothing) {
            return m;
        }
        if (m.kind() != ExprKind::Atomic) {
            continue;
        }
        if (best == nullptr) {
            best = &m;
            continue;
        }
        const auto lhs = std::make_pair(m.iri().local_name(), std::string_view(m.iri().str()));
        const auto rhs = std::make_pair(best->iri().local_name(), std::string_view(best->iri().str()));
        if (lhs < rhs) {
            best = &m;
        }
    }
    if (best != nullptr) {
        return *best;
    }
    return *std::min_element(members.begin(), members.end());
}

std::optional<std::size_t> Taxonomy::node_of(const ClassExpression& ce) const {
    if (auto it = member_index_.find(ce); it != member_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

Taxonomy classify(const Reasoner& reasoner) {
    if (!reasoner.is_consistent()) {
        throw InconsistentOntologyError();
    }
    const RuleSet& rs = reasoner.rules();
    Taxonomy tax;
    tax.nodes.resize(2);
    tax.top = 0;
    tax.bottom = 1;
    tax.nodes[0].members.push_back(ClassExpression::thing());
    tax.nodes[1].members.push_back(ClassExpression::nothing());

    std::vector<AtomId> named;
    for (AtomId a = 2; a < rs.atom_count(); ++a) {
        if (rs.expression(a).is_named()) {
            named.push_back(a);
        }
    }
    std::vector<std::size_t> node_of_atom(rs.atom_count(), static_cast<std::size_t>(-1));
    node_of_atom[kTopAtom] = 0;
    node_of_atom[kBottomAtom] = 1;
    std::vector<std::vector<AtomId>> sup(rs.atom_count());
    const auto top_subsumers = reasoner.subsumers(kTopAtom);
    for (const AtomId a : named) {
        sup[a] = reasoner.subsumers(a);
        if (std::binary_search(sup[a].begin(), sup[a].end(), kBottomAtom)) {
            node_of_atom[a] = 1;
        } else if (std::binary_search(top_subsumers.begin(), top_subsumers.end(), a)) {
            node_of_atom[a] = 0;
        }
    }
    for (const AtomId a : named) {
        if (node_of_atom[a] != static_cast<std::size_t>(-1)) {
            continue;
        }
        const std::size_t node = tax.nodes.size();
        tax.nodes.emplace_back();
        for (const AtomId b : sup[a]) {
            if (b >= 2 && rs.expression(b).is_named() && node_of_atom[b] == static_cast<std::size_t>(-1) &&
                std::binary_search(sup[b].begin(), sup[b].end(), a)) {
                node_of_atom[b] = node;
            }
        }
        node_of_atom[a] = node;
    }
    for (const AtomId a : named) {
        tax.nodes[node_of_atom[a]].members.push_back(rs.expression(a));
    }
    for (auto& node : tax.nodes) {
        std::sort(node.members.begin(), node.members.end());
        node.representative = choose_representative(node.members);
    }
    // Strict named subsumers per node, as sorted node lists.
    const std::size_t count = tax.nodes.size();
    std::vector<std::vector<std::size_t>> strict(count);
    for (const AtomId a : named) {
        const std::size_t node = node_of_atom[a];
        if (node <= 1 || !strict[node].empty()) {
            continue;
        }
        for (const AtomId b : sup[a]) {
            const std::size_t other = node_of_atom[b];
            if (other != static_cast<std::size_t>(-1) && other != node && other != 1) {
                strict[node].push_back(other);
            }
        }
        strict[node].push_back(0);
        std::sort(strict[node].begin(), strict[node].end());
        strict[node].erase(std::unique(strict[node].begin(), strict[node].end()), strict[node].end());
    }
    for (std::size_t node = 2; node < count; ++node) {
        for (const std::size_t u : strict[node]) {
            const bool implied = std::any_of(strict[node].begin(), strict[node].end(), [&](std::size_t v) {
                return v != u && std::binary_search(strict[v].begin(), strict[v].end(), u);
            });
            if (!implied) {
                tax.nodes[node].parents.push_back(u);
                tax.nodes[u].children.push_back(node);
            }
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        for (const auto& m : tax.nodes[i].members) {
            tax.member_index_.emplace(m, i);
        }
        std::sort(tax.nodes[i].children.begin(), tax.nodes[i].children.end());
    }
    return tax;
}

}  // namespace ontoview
