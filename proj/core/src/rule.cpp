#include "gtv/rule.hpp"

#include <algorithm>
#include <cassert>

#include "gtv/errors.hpp"
#include "gtv/match.hpp"

namespace gtv {

namespace {

bool is_valid_embedding(const Graph& k, const Graph& into,
                        const std::vector<NodeId>& nodes,
                        const std::vector<EdgeId>& edges) {
    Morphism m;
    m.domain = k;
    m.codomain = into;
    m.node_map = nodes;
    m.edge_map = edges;
    return is_valid_morphism(m) && is_injective(m);
}

} // namespace

bool is_valid_plain_rule(const PlainRule& p) {
    return is_valid_embedding(p.interface, p.left, p.k_left_nodes, p.k_left_edges) &&
           is_valid_embedding(p.interface, p.right, p.k_right_nodes, p.k_right_edges);
}

PlainRule invert(const PlainRule& p) {
    PlainRule q = p;
    std::swap(q.left, q.right);
    std::swap(q.k_left_nodes, q.k_right_nodes);
    std::swap(q.k_left_edges, q.k_right_edges);
    return q;
}

const char* role_name(Role r) {
    switch (r) {
    case Role::System:
        return "system";
    case Role::Environment:
        return "environment";
    case Role::Skip:
        return "skip";
    }
    return "?";
}

Rule::Rule(PlainRule plain_, Condition ac_, Role role_)
    : plain(std::move(plain_)), ac(std::move(ac_)), role(role_), base(plain.name) {
    assert(is_valid_plain_rule(plain));
    // ac's context must be a prefix subgraph of the left-hand side.
    const Graph& ctx = ac.context();
    assert(ctx.node_count() <= plain.left.node_count());
    assert(ctx.edge_count() <= plain.left.edge_count());
    for (NodeId v = 0; v < ctx.node_count(); ++v)
        assert(ctx.node_label(v) == plain.left.node_label(v));
    for (EdgeId e = 0; e < ctx.edge_count(); ++e)
        assert(ctx.edge(e) == plain.left.edge(e));
}

std::string Rule::display_name() const {
    std::string name = base;
    if (pre_state && post_state) {
        name += '[' + *pre_state + "->" + *post_state;
        if (pre_marking)
            name += ',' + *pre_marking;
        name += ']';
    }
    return name;
}

const Rule& skip_rule() {
    static const Rule rule = [] {
        PlainRule p;
        p.name = "Skip";
        return Rule(std::move(p), Condition::truth(Graph()), Role::Skip);
    }();
    return rule;
}

namespace {

struct DeletionSets {
    std::vector<bool> host_node_deleted; // indexed by host node
    std::vector<bool> host_edge_matched; // host edges in the image of L
    std::vector<bool> host_edge_deleted;
};

DeletionSets deletion_sets(const Rule& r, const Graph& g, const Morphism& m) {
    const PlainRule& p = r.plain;
    std::vector<bool> l_node_in_k(p.left.node_count(), false);
    std::vector<bool> l_edge_in_k(p.left.edge_count(), false);
    for (NodeId v : p.k_left_nodes)
        l_node_in_k[v] = true;
    for (EdgeId e : p.k_left_edges)
        l_edge_in_k[e] = true;

    DeletionSets sets;
    sets.host_node_deleted.assign(g.node_count(), false);
    sets.host_edge_matched.assign(g.edge_count(), false);
    sets.host_edge_deleted.assign(g.edge_count(), false);
    for (NodeId v = 0; v < p.left.node_count(); ++v)
        if (!l_node_in_k[v])
            sets.host_node_deleted[m.node_map[v]] = true;
    for (EdgeId e = 0; e < p.left.edge_count(); ++e) {
        sets.host_edge_matched[m.edge_map[e]] = true;
        if (!l_edge_in_k[e])
            sets.host_edge_deleted[m.edge_map[e]] = true;
    }
    return sets;
}

// Matches are injective, so the identification condition holds by
// construction; only the dangling condition needs checking.
bool violates_dangling(const DeletionSets& sets, const Graph& g) {
    for (EdgeId f = 0; f < g.edge_count(); ++f) {
        if (sets.host_edge_matched[f])
            continue;
        const Graph::Edge& e = g.edge(f);
        if (sets.host_node_deleted[e.src] || sets.host_node_deleted[e.tgt])
            return true;
    }
    return false;
}

void require_valid_match(const Rule& r, const Graph& g, const Morphism& m) {
    if (m.domain != r.plain.left || m.codomain != g)
        throw MatchInvalidError("apply_at: morphism does not match rule \"" +
                                r.plain.name + "\" into the given graph");
    if (!is_valid_morphism(m) || !is_injective(m))
        throw MatchInvalidError("apply_at: morphism is not an injective match of \"" +
                                r.plain.name + "\"");
}

bool ac_holds(const Rule& r, const Morphism& m) {
    const Graph& ctx = r.ac.context();
    Morphism restricted =
        restrict_to_prefix(m, ctx.node_count(), ctx.edge_count());
    return morphism_satisfies(restricted, r.ac);
}

} // namespace

ApplyFailure why_inapplicable(const Rule& r, const Graph& g, const Morphism& m) {
    require_valid_match(r, g, m);
    if (!ac_holds(r, m))
        return ApplyFailure::AcViolated;
    if (violates_dangling(deletion_sets(r, g, m), g))
        return ApplyFailure::Dangling;
    return ApplyFailure::None;
}

ApplyResult apply_at_full(const Rule& r, const Graph& g, const Morphism& m) {
    switch (why_inapplicable(r, g, m)) {
    case ApplyFailure::AcViolated:
        throw ApplicationConditionError(
            "apply_at: application condition of \"" + r.plain.name +
            "\" violated at this match");
    case ApplyFailure::Dangling:
        throw DanglingEdgeError("apply_at: deleting a node of \"" + r.plain.name +
                                "\" would leave a dangling edge");
    case ApplyFailure::None:
        break;
    }

    const PlainRule& p = r.plain;
    DeletionSets sets = deletion_sets(r, g, m);

    // R elements outside the K-image are created fresh; K elements map to the
    // preserved host elements through K -> L -> g.
    std::vector<int> r_node_from_k(p.right.node_count(), -1);
    std::vector<int> r_edge_from_k(p.right.edge_count(), -1);
    for (int k = 0; k < p.interface.node_count(); ++k)
        r_node_from_k[p.k_right_nodes[k]] = k;
    for (int k = 0; k < p.interface.edge_count(); ++k)
        r_edge_from_k[p.k_right_edges[k]] = k;

    Graph h;
    std::vector<NodeId> host_node_remap(g.node_count(), -1);
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!sets.host_node_deleted[v])
            host_node_remap[v] = h.add_node(g.node_label(v));

    Morphism comatch;
    comatch.domain = p.right;
    comatch.node_map.assign(p.right.node_count(), -1);
    comatch.edge_map.assign(p.right.edge_count(), -1);
    for (NodeId w = 0; w < p.right.node_count(); ++w) {
        int k = r_node_from_k[w];
        if (k >= 0)
            comatch.node_map[w] = host_node_remap[m.node_map[p.k_left_nodes[k]]];
        else
            comatch.node_map[w] = h.add_node(p.right.node_label(w));
    }

    std::vector<EdgeId> host_edge_remap(g.edge_count(), -1);
    for (EdgeId f = 0; f < g.edge_count(); ++f) {
        if (sets.host_edge_deleted[f])
            continue;
        const Graph::Edge& e = g.edge(f);
        host_edge_remap[f] =
            h.add_edge(host_node_remap[e.src], host_node_remap[e.tgt], e.label);
    }
    for (EdgeId we = 0; we < p.right.edge_count(); ++we) {
        int k = r_edge_from_k[we];
        if (k >= 0) {
            comatch.edge_map[we] = host_edge_remap[m.edge_map[p.k_left_edges[k]]];
        } else {
            const Graph::Edge& e = p.right.edge(we);
            comatch.edge_map[we] = h.add_edge(comatch.node_map[e.src],
                                              comatch.node_map[e.tgt], e.label);
        }
    }

    comatch.codomain = h;
    assert(is_valid_morphism(comatch) && is_injective(comatch));
    return ApplyResult{std::move(h), std::move(comatch)};
}

Graph apply_at(const Rule& r, const Graph& g, const Morphism& m) {
    return apply_at_full(r, g, m).result;
}

std::vector<TransformationStep> direct_transformations(std::span<const Rule> rules,
                                                       const Graph& g) {
    std::vector<TransformationStep> steps;
    for (int ri = 0; ri < static_cast<int>(rules.size()); ++ri) {
        const Rule& r = rules[ri];
        std::vector<Morphism> matches =
            enumerate_injective_morphisms(r.plain.left, g);
        for (int mi = 0; mi < static_cast<int>(matches.size()); ++mi) {
            if (why_inapplicable(r, g, matches[mi]) != ApplyFailure::None)
                continue;
            TransformationStep step;
            step.rule = r.display_name();
            step.base = r.base;
            step.role = r.role;
            step.rule_index = ri;
            step.match_index = mi;
            step.before = g;
            step.after = apply_at(r, g, matches[mi]);
            steps.push_back(std::move(step));
        }
    }
    return steps;
}

bool is_deadlocked(std::span<const Rule> rules, const Graph& g) {
    for (const Rule& r : rules) {
        for (const Morphism& m : enumerate_injective_morphisms(r.plain.left, g))
            if (why_inapplicable(r, g, m) == ApplyFailure::None)
                return false;
    }
    return true;
}

} // namespace gtv
