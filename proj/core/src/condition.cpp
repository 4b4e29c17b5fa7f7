#include "gtv/condition.hpp"

#include <cassert>

#include "gtv/errors.hpp"
#include "gtv/match.hpp"

namespace gtv {

struct Condition::Node {
    Kind kind;
    Graph context;
    // Exists
    Morphism extension;
    std::vector<Condition> parts; // nested (Exists), child (Not), children (And)
};

Condition Condition::truth(Graph context) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::True;
    node->context = std::move(context);
    return Condition(std::move(node));
}

Condition Condition::falsity(Graph context) {
    return negate(truth(std::move(context)));
}

Condition Condition::exists(Morphism extension, Condition nested) {
    assert(is_valid_morphism(extension) && is_injective(extension));
    assert(nested.context() == extension.codomain);
    auto node = std::make_shared<Node>();
    node->kind = Kind::Exists;
    node->context = extension.domain;
    node->extension = std::move(extension);
    node->parts.push_back(std::move(nested));
    return Condition(std::move(node));
}

Condition Condition::exists(Morphism extension) {
    Condition nested = truth(extension.codomain);
    return exists(std::move(extension), std::move(nested));
}

Condition Condition::negate(Condition c) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Not;
    node->context = c.context();
    node->parts.push_back(std::move(c));
    return Condition(std::move(node));
}

Condition Condition::conj(Graph context, std::vector<Condition> children) {
    for ([[maybe_unused]] const Condition& c : children)
        assert(c.context() == context);
    auto node = std::make_shared<Node>();
    node->kind = Kind::And;
    node->context = std::move(context);
    node->parts = std::move(children);
    return Condition(std::move(node));
}

Condition Condition::disj(Graph context, std::vector<Condition> children) {
    // or(cs) := not(and(not(c)...)); the empty disjunction is false
    std::vector<Condition> negated;
    negated.reserve(children.size());
    for (Condition& c : children)
        negated.push_back(negate(std::move(c)));
    return negate(conj(std::move(context), std::move(negated)));
}

Condition Condition::implies(Condition antecedent, Condition consequent) {
    Graph context = antecedent.context();
    std::vector<Condition> parts;
    parts.push_back(std::move(antecedent));
    parts.push_back(negate(std::move(consequent)));
    return negate(conj(std::move(context), std::move(parts)));
}

Condition Condition::forall(Morphism extension, Condition nested) {
    // forall(a, c) := not(exists(a, not(c)))
    return negate(exists(std::move(extension), negate(std::move(nested))));
}

Condition::Kind Condition::kind() const { return node_->kind; }
const Graph& Condition::context() const { return node_->context; }

const Morphism& Condition::extension() const {
    assert(node_->kind == Kind::Exists);
    return node_->extension;
}

const Condition& Condition::nested() const {
    assert(node_->kind == Kind::Exists);
    return node_->parts[0];
}

const Condition& Condition::child() const {
    assert(node_->kind == Kind::Not);
    return node_->parts[0];
}

const std::vector<Condition>& Condition::children() const {
    assert(node_->kind == Kind::And);
    return node_->parts;
}

bool Condition::operator==(const Condition& other) const {
    if (node_ == other.node_)
        return true;
    if (node_->kind != other.node_->kind || node_->context != other.node_->context)
        return false;
    if (node_->kind == Kind::Exists && node_->extension != other.node_->extension)
        return false;
    return node_->parts == other.node_->parts;
}

namespace {

// All injective q: C -> G with q∘a = p, i.e. extensions of p along a.
std::vector<Morphism> enumerate_completions(const Morphism& a, const Morphism& p) {
    PartialAssignment pre;
    pre.nodes.assign(a.codomain.node_count(), -1);
    pre.edges.assign(a.codomain.edge_count(), -1);
    for (NodeId v = 0; v < a.domain.node_count(); ++v)
        pre.nodes[a.node_map[v]] = p.node_map[v];
    for (EdgeId e = 0; e < a.domain.edge_count(); ++e)
        pre.edges[a.edge_map[e]] = p.edge_map[e];
    return enumerate_injective_morphisms(a.codomain, p.codomain, pre);
}

} // namespace

bool morphism_satisfies(const Morphism& p, const Condition& c) {
    if (p.domain != c.context())
        throw ContextMismatchError(
            "morphism_satisfies: morphism domain differs from condition context");
    switch (c.kind()) {
    case Condition::Kind::True:
        return true;
    case Condition::Kind::Not:
        return !morphism_satisfies(p, c.child());
    case Condition::Kind::And:
        for (const Condition& part : c.children())
            if (!morphism_satisfies(p, part))
                return false;
        return true;
    case Condition::Kind::Exists:
        for (const Morphism& q : enumerate_completions(c.extension(), p))
            if (morphism_satisfies(q, c.nested()))
                return true;
        return false;
    }
    return false; // unreachable
}

bool graph_satisfies(const Graph& g, const Condition& c) {
    if (!c.context().empty())
        throw ContextMismatchError(
            "graph_satisfies: constraint context must be the empty graph");
    Morphism p;
    p.domain = Graph();
    p.codomain = g;
    return morphism_satisfies(p, c);
}

} // namespace gtv
