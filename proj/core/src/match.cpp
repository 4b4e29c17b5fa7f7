#include "gtv/match.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace gtv {

namespace {

/*
  Two-phase backtracking: first an injective label-preserving node map, then
  an injective assignment of pattern edges to host edges whose endpoints match
  the node map. Candidates are tried in ascending host id, which makes the
  enumeration order lexicographic in (node_map, edge_map).

  The callback returns false to abort the search (used by the existence
  check); enumerate_all keeps collecting.
*/
class Matcher {
public:
    Matcher(const Graph& pattern, const Graph& host,
            const std::optional<PartialAssignment>& pre)
        : pattern_(pattern), host_(host) {
        node_map_.assign(pattern.node_count(), -1);
        edge_map_.assign(pattern.edge_count(), -1);
        node_used_.assign(host.node_count(), false);
        edge_used_.assign(host.edge_count(), false);
        node_pinned_.assign(pattern.node_count(), false);
        edge_pinned_.assign(pattern.edge_count(), false);
        feasible_ = true;
        if (pre) {
            assert(static_cast<int>(pre->nodes.size()) == pattern.node_count());
            assert(static_cast<int>(pre->edges.size()) == pattern.edge_count());
            for (NodeId v = 0; v < pattern.node_count(); ++v) {
                NodeId w = pre->nodes[v];
                if (w < 0)
                    continue;
                if (!host.has_node(w) || node_used_[w] ||
                    host.node_label(w) != pattern.node_label(v)) {
                    feasible_ = false;
                    return;
                }
                node_map_[v] = w;
                node_used_[w] = true;
                node_pinned_[v] = true;
            }
            for (EdgeId e = 0; e < pattern.edge_count(); ++e) {
                EdgeId f = pre->edges[e];
                if (f < 0)
                    continue;
                if (!host.has_edge(f) || edge_used_[f]) {
                    feasible_ = false;
                    return;
                }
                edge_map_[e] = f;
                edge_used_[f] = true;
                edge_pinned_[e] = true;
            }
        }
    }

    // visit() is called with a complete morphism; return false to stop.
    bool search(const std::function<bool(const Morphism&)>& visit) {
        if (!feasible_)
            return true;
        return assign_node(0, visit);
    }

private:
    bool assign_node(NodeId v, const std::function<bool(const Morphism&)>& visit) {
        if (v == pattern_.node_count())
            return assign_edge(0, visit);
        if (node_pinned_[v])
            return assign_node(v + 1, visit);
        for (NodeId w = 0; w < host_.node_count(); ++w) {
            if (node_used_[w] || host_.node_label(w) != pattern_.node_label(v))
                continue;
            node_map_[v] = w;
            node_used_[w] = true;
            bool keep_going = assign_node(v + 1, visit);
            node_used_[w] = false;
            node_map_[v] = -1;
            if (!keep_going)
                return false;
        }
        return true;
    }

    bool edge_compatible(EdgeId e, EdgeId f) const {
        const Graph::Edge& pe = pattern_.edge(e);
        const Graph::Edge& he = host_.edge(f);
        return he.label == pe.label && he.src == node_map_[pe.src] &&
               he.tgt == node_map_[pe.tgt];
    }

    bool assign_edge(EdgeId e, const std::function<bool(const Morphism&)>& visit) {
        if (e == pattern_.edge_count()) {
            Morphism m;
            m.domain = pattern_;
            m.codomain = host_;
            m.node_map = node_map_;
            m.edge_map = edge_map_;
            return visit(m);
        }
        if (edge_pinned_[e]) {
            if (!edge_compatible(e, edge_map_[e]))
                return true; // pinned image inconsistent with node map: prune
            return assign_edge(e + 1, visit);
        }
        for (EdgeId f = 0; f < host_.edge_count(); ++f) {
            if (edge_used_[f] || !edge_compatible(e, f))
                continue;
            edge_map_[e] = f;
            edge_used_[f] = true;
            bool keep_going = assign_edge(e + 1, visit);
            edge_used_[f] = false;
            edge_map_[e] = -1;
            if (!keep_going)
                return false;
        }
        return true;
    }

    const Graph& pattern_;
    const Graph& host_;
    std::vector<NodeId> node_map_;
    std::vector<EdgeId> edge_map_;
    std::vector<bool> node_used_, edge_used_;
    std::vector<bool> node_pinned_, edge_pinned_;
    bool feasible_;
};

} // namespace

std::vector<Morphism> enumerate_injective_morphisms(
    const Graph& pattern, const Graph& host,
    const std::optional<PartialAssignment>& pre) {
    std::vector<Morphism> out;
    Matcher matcher(pattern, host, pre);
    matcher.search([&](const Morphism& m) {
        out.push_back(m);
        return true;
    });
    // The search already emits in lexicographic order; keep the sort as a
    // belt-and-braces guarantee of the documented ordering.
    std::sort(out.begin(), out.end(), [](const Morphism& a, const Morphism& b) {
        if (a.node_map != b.node_map)
            return a.node_map < b.node_map;
        return a.edge_map < b.edge_map;
    });
    return out;
}

bool has_injective_morphism(const Graph& pattern, const Graph& host,
                            const std::optional<PartialAssignment>& pre) {
    bool found = false;
    Matcher matcher(pattern, host, pre);
    matcher.search([&](const Morphism&) {
        found = true;
        return false;
    });
    return found;
}

} // namespace gtv
