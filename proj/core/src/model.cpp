#include "gtv/model.hpp"

#include <numeric>
#include <set>
#include <utility>

#include "gtv/errors.hpp"

namespace gtv {

namespace {

// name -> element index of the graph under construction
struct Scope {
    std::map<std::string, NodeId> nodes;
    std::map<std::string, EdgeId> edges;
};

void check_label(const std::string& label, const std::set<std::string>& alphabet) {
    if (!alphabet.count(label)) {
        throw ResolutionError(label, "label '" + label + "' is not in the alphabet");
    }
}

/*
  Extends g in place by the declarations of p. New node names must be fresh;
  edge endpoints may name nodes of g's existing scope (that is how condition
  extensions share elements with their context).
*/
void apply_pattern(Graph& g, Scope& scope, const PatternDecl& p,
                   const std::set<std::string>& alphabet) {
    for (const auto& item : p.items) {
        if (item.kind == GraphItemDecl::Kind::Nodes) {
            check_label(item.nodes.label, alphabet);
            for (const auto& name : item.nodes.names) {
                if (scope.nodes.count(name)) {
                    throw ResolutionError(name,
                                          "node '" + name + "' declared twice");
                }
                scope.nodes[name] = g.add_node(item.nodes.label);
            }
            continue;
        }
        const EdgeDecl& e = item.edge;
        check_label(e.label, alphabet);
        auto src = scope.nodes.find(e.src);
        if (src == scope.nodes.end()) {
            throw ResolutionError(e.src, "unknown node '" + e.src + "'");
        }
        auto dst = scope.nodes.find(e.dst);
        if (dst == scope.nodes.end()) {
            throw ResolutionError(e.dst, "unknown node '" + e.dst + "'");
        }
        EdgeId id = g.add_edge(src->second, dst->second, e.label);
        if (!e.name.empty()) {
            if (scope.edges.count(e.name)) {
                throw ResolutionError(e.name,
                                      "edge '" + e.name + "' declared twice");
            }
            scope.edges[e.name] = id;
        }
    }
}

Graph compile_graph(const PatternDecl& p, const std::set<std::string>& alphabet) {
    Graph g;
    Scope scope;
    apply_pattern(g, scope, p, alphabet);
    return g;
}

// identity prefix embedding of `from` into its extension `to`
Morphism prefix_inclusion(Graph from, Graph to) {
    Morphism m;
    m.node_map.resize(from.node_count());
    m.edge_map.resize(from.edge_count());
    std::iota(m.node_map.begin(), m.node_map.end(), 0);
    std::iota(m.edge_map.begin(), m.edge_map.end(), 0);
    m.domain = std::move(from);
    m.codomain = std::move(to);
    return m;
}

Condition compile_cond(const CondExpr& e, const Graph& ctx, const Scope& scope,
                       const std::map<std::string, Condition>& constraints,
                       const std::set<std::string>& alphabet) {
    switch (e.kind) {
    case CondExpr::Kind::True:
        return Condition::truth(ctx);
    case CondExpr::Kind::False:
        return Condition::falsity(ctx);
    case CondExpr::Kind::Ref: {
        if (ctx.node_count() != 0 || ctx.edge_count() != 0) {
            throw ResolutionError(e.ref, "constraint '" + e.ref +
                                             "' referenced in a non-empty context");
        }
        auto it = constraints.find(e.ref);
        if (it == constraints.end()) {
            throw ResolutionError(e.ref, "unknown constraint '" + e.ref + "'");
        }
        return it->second;
    }
    case CondExpr::Kind::Not:
        return Condition::negate(
            compile_cond(e.children[0], ctx, scope, constraints, alphabet));
    case CondExpr::Kind::And:
        return Condition::conj(
            ctx, {compile_cond(e.children[0], ctx, scope, constraints, alphabet),
                  compile_cond(e.children[1], ctx, scope, constraints, alphabet)});
    case CondExpr::Kind::Or:
        return Condition::disj(
            ctx, {compile_cond(e.children[0], ctx, scope, constraints, alphabet),
                  compile_cond(e.children[1], ctx, scope, constraints, alphabet)});
    case CondExpr::Kind::Implies:
        return Condition::implies(
            compile_cond(e.children[0], ctx, scope, constraints, alphabet),
            compile_cond(e.children[1], ctx, scope, constraints, alphabet));
    case CondExpr::Kind::Exists:
    case CondExpr::Kind::Forall: {
        Graph extended = ctx;
        Scope inner = scope;
        apply_pattern(extended, inner, e.pattern, alphabet);
        Morphism a = prefix_inclusion(ctx, extended);
        Condition nested =
            e.children.empty()
                ? Condition::truth(extended)
                : compile_cond(e.children[0], extended, inner, constraints, alphabet);
        return e.kind == CondExpr::Kind::Exists
                   ? Condition::exists(std::move(a), std::move(nested))
                   : Condition::forall(std::move(a), std::move(nested));
    }
    }
    throw ResolutionError("?", "unhandled condition kind");
}

Rule compile_rule(const RuleDecl& rd,
                  const std::map<std::string, Condition>& constraints,
                  const std::set<std::string>& alphabet) {
    Graph left, right;
    Scope sl, sr;
    apply_pattern(left, sl, rd.left, alphabet);
    apply_pattern(right, sr, rd.right, alphabet);

    PlainRule p;
    p.name = rd.name;
    p.left = left;
    p.right = right;

    // preserved nodes: shared names, in left declaration order
    std::vector<std::pair<NodeId, std::string>> left_nodes;
    for (const auto& [name, id] : sl.nodes) left_nodes.emplace_back(id, name);
    std::sort(left_nodes.begin(), left_nodes.end());
    std::vector<int> left_to_k(left.node_count(), -1);
    for (const auto& [lid, name] : left_nodes) {
        auto it = sr.nodes.find(name);
        if (it == sr.nodes.end()) continue;
        if (left.node_label(lid) != right.node_label(it->second)) {
            throw ResolutionError(name, "shared node '" + name +
                                            "' changes its label between left and "
                                            "right");
        }
        left_to_k[lid] = static_cast<int>(p.interface.node_count());
        p.interface.add_node(left.node_label(lid));
        p.k_left_nodes.push_back(lid);
        p.k_right_nodes.push_back(it->second);
    }

    // preserved edges: names shared by both sides, endpoints preserved too
    std::vector<std::pair<EdgeId, std::string>> left_edges;
    for (const auto& [name, id] : sl.edges) left_edges.emplace_back(id, name);
    std::sort(left_edges.begin(), left_edges.end());
    for (const auto& [leid, name] : left_edges) {
        auto it = sr.edges.find(name);
        if (it == sr.edges.end()) continue;
        const Graph::Edge& le = left.edge(leid);
        const Graph::Edge& re = right.edge(it->second);
        if (le.label != re.label) {
            throw ResolutionError(name, "shared edge '" + name +
                                            "' changes its label between left and "
                                            "right");
        }
        int ks = left_to_k[le.src];
        int kt = left_to_k[le.tgt];
        if (ks == -1 || kt == -1) {
            throw ResolutionError(name, "shared edge '" + name +
                                            "' is attached to a deleted node");
        }
        if (p.k_right_nodes[ks] != re.src || p.k_right_nodes[kt] != re.tgt) {
            throw ResolutionError(name, "shared edge '" + name +
                                            "' connects different nodes on the two "
                                            "sides");
        }
        p.k_left_edges.push_back(leid);
        p.k_right_edges.push_back(it->second);
        p.interface.add_edge(ks, kt, le.label);
    }

    if (!is_valid_plain_rule(p)) {
        throw ResolutionError(rd.name, "rule '" + rd.name + "' has a malformed "
                                       "interface");
    }

    Condition ac = rd.when
                       ? compile_cond(*rd.when, left, sl, constraints, alphabet)
                       : Condition::truth(left);
    return Rule(std::move(p), std::move(ac), rd.role);
}

template <typename T>
void require_fresh(std::set<std::string>& seen, const std::string& name, T what) {
    if (!seen.insert(name).second) {
        throw ResolutionError(name,
                              std::string("duplicate ") + what + " '" + name + "'");
    }
}

} // namespace

CompiledModel compile_model(const ModelFile& m) {
    CompiledModel out;
    out.surface = m;

    std::set<std::string> alphabet;
    for (const auto& label : m.alphabet) {
        require_fresh(alphabet, label, "alphabet label");
        if (marking_labels().count(label)) {
            throw ResolutionError(label, "label '" + label +
                                             "' collides with a reserved marking");
        }
    }

    std::set<std::string> graph_names;
    for (const auto& gd : m.graphs) {
        require_fresh(graph_names, gd.name, "graph");
        out.graphs.emplace(gd.name, compile_graph(gd.pattern, alphabet));
    }

    std::set<std::string> constraint_names;
    Graph empty;
    Scope empty_scope;
    for (const auto& cd : m.constraints) {
        require_fresh(constraint_names, cd.name, "constraint");
        out.constraints.emplace(
            cd.name,
            compile_cond(cd.expr, empty, empty_scope, out.constraints, alphabet));
    }

    std::set<std::string> rule_names;
    for (const auto& rd : m.rules) {
        require_fresh(rule_names, rd.name, "rule");
        out.rules.push_back(compile_rule(rd, out.constraints, alphabet));
    }

    std::set<std::string> automaton_names;
    for (const auto& ad : m.automata) {
        require_fresh(automaton_names, ad.name, "automaton");
        if (!is_valid_automaton(ad)) {
            throw ResolutionError(ad.name,
                                  "automaton '" + ad.name + "' is malformed");
        }
        for (const auto& state : ad.states) {
            if (alphabet.count(state) || marking_labels().count(state)) {
                throw ResolutionError(state, "automaton state '" + state +
                                                 "' collides with another label "
                                                 "namespace");
            }
        }
        for (const auto& t : ad.transitions) {
            for (const auto& rn : t.selection) {
                if (!rule_names.count(rn)) {
                    throw ResolutionError(rn, "automaton '" + ad.name +
                                                  "' selects unknown rule '" + rn +
                                                  "'");
                }
            }
        }
        out.automata.emplace(ad.name, ad);
    }

    std::set<std::string> query_names;
    for (const auto& qd : m.queries) {
        require_fresh(query_names, qd.name, "query");
        if (!constraint_names.count(qd.pre)) {
            throw ResolutionError(qd.pre, "query '" + qd.name +
                                              "' references unknown constraint '" +
                                              qd.pre + "'");
        }
        if (!constraint_names.count(qd.post)) {
            throw ResolutionError(qd.post, "query '" + qd.name +
                                               "' references unknown constraint '" +
                                               qd.post + "'");
        }
        if (qd.inits.empty()) {
            throw ResolutionError(qd.name, "query '" + qd.name +
                                               "' needs at least one initial graph");
        }
        for (const auto& gn : qd.inits) {
            if (!graph_names.count(gn)) {
                throw ResolutionError(gn, "query '" + qd.name +
                                              "' references unknown graph '" + gn +
                                              "'");
            }
        }
        if (!automaton_names.count(qd.automaton)) {
            throw ResolutionError(qd.automaton,
                                  "query '" + qd.name +
                                      "' references unknown automaton '" +
                                      qd.automaton + "'");
        }
        if (qd.k < 0) {
            throw ResolutionError(qd.name, "query '" + qd.name +
                                               "' needs a nonnegative k");
        }
        if (qd.kind == QueryKind::Plain && qd.method != Method::Direct) {
            throw ResolutionError(qd.name,
                                  "query '" + qd.name +
                                      "' is plain; only the direct method "
                                      "applies");
        }
    }

    return out;
}

CorrectnessQuery instantiate_query(const CompiledModel& m, const std::string& query,
                                   const ExplorationLimits& limits) {
    const QueryDecl* found = nullptr;
    for (const auto& qd : m.surface.queries) {
        if (qd.name == query) {
            found = &qd;
            break;
        }
    }
    if (!found) throw ResolutionError(query, "unknown query '" + query + "'");

    CorrectnessQuery q{.model = {m.rules, m.automata.at(found->automaton)},
                       .pre = m.constraints.at(found->pre),
                       .post = m.constraints.at(found->post),
                       .kind = found->kind,
                       .k = found->k,
                       .inits = {},
                       .limits = limits,
                       .method = found->method};
    for (const auto& gn : found->inits) q.inits.push_back(m.graphs.at(gn));
    return q;
}

} // namespace gtv
