#include "ontoview/class_expression.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ontoview {

struct ClassExpression::Node {
    ExprKind kind;
    Iri iri;
    std::uint32_t n = 0;
    std::vector<ClassExpression> children;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_restriction(ExprKind kind) {
    return kind >= ExprKind::Exists;
}

bool has_cardinality(ExprKind kind) {
    return kind == ExprKind::MinCard || kind == ExprKind::MaxCard || kind == ExprKind::ExactCard;
}

}  // namespace

ClassExpression ClassExpression::make(ExprKind kind, Iri iri, std::uint32_t n,
                                      std::vector<ClassExpression> children) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->iri = std::move(iri);
    node->n = n;
    node->children = std::move(children);
    std::size_t h = mix(0, static_cast<std::size_t>(kind));
    h = mix(h, std::hash<std::string>{}(node->iri.str()));
    h = mix(h, n);
    for (const auto& child : node->children) {
        h = mix(h, child.hash());
    }
    node->hash = h;
    return ClassExpression(std::move(node));
}

ClassExpression::ClassExpression() : ClassExpression(thing()) {}

ClassExpression ClassExpression::thing() {
    static const ClassExpression t = make(ExprKind::Thing, vocab::owl_thing(), 0, {});
    return t;
}

ClassExpression ClassExpression::nothing() {
    static const ClassExpression b = make(ExprKind::Nothing, vocab::owl_nothing(), 0, {});
    return b;
}

ClassExpression ClassExpression::named(Iri iri) {
    if (iri == vocab::owl_thing()) {
        return thing();
    }
    if (iri == vocab::owl_nothing()) {
        return nothing();
    }
    if (iri.empty()) {
        throw std::invalid_argument("named class needs an IRI");
    }
    return make(ExprKind::Atomic, std::move(iri), 0, {});
}

ClassExpression ClassExpression::nary(ExprKind kind, std::vector<ClassExpression> operands) {
    const ExprKind neutral = kind == ExprKind::And ? ExprKind::Thing : ExprKind::Nothing;
    std::vector<ClassExpression> flat;
    flat.reserve(operands.size());
    for (auto& op : operands) {
        if (op.kind() == kind) {
            for (const auto& inner : op.operands()) {
                flat.push_back(inner);
            }
        } else if (op.kind() != neutral) {
            flat.push_back(std::move(op));
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) {
        return kind == ExprKind::And ? thing() : nothing();
    }
    if (flat.size() == 1) {
        return flat.front();
    }
    return make(kind, Iri{}, 0, std::move(flat));
}

ClassExpression ClassExpression::conjunction(std::vector<ClassExpression> operands) {
    return nary(ExprKind::And, std::move(operands));
}

ClassExpression ClassExpression::disjunction(std::vector<ClassExpression> operands) {
    return nary(ExprKind::Or, std::move(operands));
}

ClassExpression ClassExpression::complement(ClassExpression operand) {
    return make(ExprKind::Not, Iri{}, 0, {std::move(operand)});
}

ClassExpression ClassExpression::some(Iri role, ClassExpression filler) {
    return make(ExprKind::Exists, std::move(role), 0, {std::move(filler)});
}

ClassExpression ClassExpression::only(Iri role, ClassExpression filler) {
    return make(ExprKind::ForAll, std::move(role), 0, {std::move(filler)});
}

ClassExpression ClassExpression::min_card(std::uint32_t n, Iri role, ClassExpression filler) {
    return make(ExprKind::MinCard, std::move(role), n, {std::move(filler)});
}

ClassExpression ClassExpression::max_card(std::uint32_t n, Iri role, ClassExpression filler) {
    return make(ExprKind::MaxCard, std::move(role), n, {std::move(filler)});
}

ClassExpression ClassExpression::exact_card(std::uint32_t n, Iri role, ClassExpression filler) {
    return make(ExprKind::ExactCard, std::move(role), n, {std::move(filler)});
}

ExprKind ClassExpression::kind() const noexcept {
    return node_->kind;
}

bool ClassExpression::is_atomic() const noexcept {
    return kind() <= ExprKind::Atomic;
}

bool ClassExpression::is_el() const noexcept {
    switch (kind()) {
    case ExprKind::Thing:
    case ExprKind::Nothing:
    case ExprKind::Atomic:
        return true;
    case ExprKind::And:
        return std::all_of(node_->children.begin(), node_->children.end(),
                           [](const ClassExpression& c) { return c.is_el(); });
    case ExprKind::Exists:
        return node_->children.front().is_el();
    default:
        return false;
    }
}

const Iri& ClassExpression::iri() const {
    if (!is_atomic()) {
        throw std::logic_error("iri() on a complex class expression");
    }
    return node_->iri;
}

const Iri& ClassExpression::role() const {
    if (!is_restriction(kind())) {
        throw std::logic_error("role() on a non-restriction");
    }
    return node_->iri;
}

std::span<const ClassExpression> ClassExpression::operands() const {
    if (kind() != ExprKind::And && kind() != ExprKind::Or) {
        throw std::logic_error("operands() on a non-boolean expression");
    }
    return node_->children;
}

const ClassExpression& ClassExpression::operand() const {
    if (kind() != ExprKind::Not) {
        throw std::logic_error("operand() on a non-complement");
    }
    return node_->children.front();
}

const ClassExpression& ClassExpression::filler() const {
    if (!is_restriction(kind())) {
        throw std::logic_error("filler() on a non-restriction");
    }
    return node_->children.front();
}

std::uint32_t ClassExpression::cardinality() const {
    if (!has_cardinality(kind())) {
        throw std::logic_error("cardinality() on a non-cardinality restriction");
    }
    return node_->n;
}

std::size_t ClassExpression::hash() const noexcept {
    return node_->hash;
}

void ClassExpression::for_each_iri(const std::function<void(const Iri&, bool)>& f) const {
    switch (kind()) {
    case ExprKind::Thing:
    case ExprKind::Nothing:
        return;
    case ExprKind::Atomic:
        f(node_->iri, false);
        return;
    default:
        break;
    }
    if (is_restriction(kind())) {
        f(node_->iri, true);
    }
    for (const auto& child : node_->children) {
        child.for_each_iri(f);
    }
}

std::vector<ClassExpression> ClassExpression::subterms() const {
    std::vector<ClassExpression> out;
    std::unordered_set<ClassExpression> seen;
    std::function<void(const ClassExpression&)> visit = [&](const ClassExpression& ce) {
        if (seen.contains(ce)) {
            return;
        }
        for (const auto& child : ce.node_->children) {
            visit(child);
        }
        seen.insert(ce);
        out.push_back(ce);
    };
    visit(*this);
    return out;
}

bool operator==(const ClassExpression& a, const ClassExpression& b) noexcept {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.node_->hash != b.node_->hash) {
        return false;
    }
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const ClassExpression& a, const ClassExpression& b) noexcept {
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (auto c = x.kind <=> y.kind; c != 0) {
        return c;
    }
    if (auto c = x.iri.str().compare(y.iri.str()); c != 0) {
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = x.n <=> y.n; c != 0) {
        return c;
    }
    const std::size_t common = std::min(x.children.size(), y.children.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (auto c = x.children[i] <=> y.children[i]; c != 0) {
            return c;
        }
    }
    return x.children.size() <=> y.children.size();
}

namespace {

std::string render_operand(const ClassExpression& ce) {
    std::string text = render(ce);
    if (ce.is_atomic()) {
        return text;
    }
    return "(" + text + ")";
}

std::string local(const Iri& iri) {
    return std::string(iri.local_name());
}

}  // namespace

std::string render(const ClassExpression& ce) {
    switch (ce.kind()) {
    case ExprKind::Thing:
        return "Thing";
    case ExprKind::Nothing:
        return "Nothing";
    case ExprKind::Atomic:
        return local(ce.iri());
    case ExprKind::And:
    case ExprKind::Or: {
        const char* sep = ce.kind() == ExprKind::And ? " and " : " or ";
        std::string out;
        bool first = true;
        for (const auto& op : ce.operands()) {
            if (!first) {
                out += sep;
            }
            out += render_operand(op);
            first = false;
        }
        return out;
    }
    case ExprKind::Not:
        return "not " + render_operand(ce.operand());
    case ExprKind::Exists:
        return local(ce.role()) + " some " + render_operand(ce.filler());
    case ExprKind::ForAll:
        return local(ce.role()) + " only " + render_operand(ce.filler());
    case ExprKind::MinCard:
        return local(ce.role()) + " min " + std::to_string(ce.cardinality()) + " " +
               render_operand(ce.filler());
    case ExprKind::MaxCard:
        return local(ce.role()) + " max " + std::to_string(ce.cardinality()) + " " +
               render_operand(ce.filler());
    case ExprKind::ExactCard:
        return local(ce.role()) + " exactly " + std::to_string(ce.cardinality()) + " " +
               render_operand(ce.filler());
    }
    return {};
}

std::string_view functional_name(ExprKind kind) noexcept {
    switch (kind) {
    case ExprKind::Thing:
        return "owl:Thing";
    case ExprKind::Nothing:
        return "owl:Nothing";
    case ExprKind::Atomic:
        return "Class";
    case ExprKind::And:
        return "ObjectIntersectionOf";
    case ExprKind::Or:
        return "ObjectUnionOf";
    case ExprKind::Not:
        return "ObjectComplementOf";
    case ExprKind::Exists:
        return "ObjectSomeValuesFrom";
    case ExprKind::ForAll:
        return "ObjectAllValuesFrom";
    case ExprKind::MinCard:
        return "ObjectMinCardinality";
    case ExprKind::MaxCard:
        return "ObjectMaxCardinality";
    case ExprKind::ExactCard:
        return "ObjectExactCardinality";
    }
    return {};
}

}  // namespace ontoview
