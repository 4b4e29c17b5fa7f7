#include "gtv/morphism.hpp"

#include <cassert>

namespace gtv {

Morphism identity_morphism(const Graph& g) {
    Morphism m;
    m.domain = g;
    m.codomain = g;
    m.node_map.resize(g.node_count());
    m.edge_map.resize(g.edge_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        m.node_map[v] = v;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        m.edge_map[e] = e;
    return m;
}

bool is_structure_preserving(const Morphism& m) {
    for (NodeId v = 0; v < m.domain.node_count(); ++v) {
        NodeId w = m.node_map[v];
        if (!m.codomain.has_node(w) ||
            m.domain.node_label(v) != m.codomain.node_label(w))
            return false;
    }
    for (EdgeId e = 0; e < m.domain.edge_count(); ++e) {
        EdgeId f = m.edge_map[e];
        if (!m.codomain.has_edge(f))
            return false;
        const Graph::Edge& de = m.domain.edge(e);
        const Graph::Edge& ce = m.codomain.edge(f);
        if (ce.label != de.label || ce.src != m.node_map[de.src] ||
            ce.tgt != m.node_map[de.tgt])
            return false;
    }
    return true;
}

bool is_injective(const Morphism& m) {
    std::vector<bool> node_hit(m.codomain.node_count(), false);
    for (NodeId w : m.node_map) {
        if (w < 0 || w >= m.codomain.node_count() || node_hit[w])
            return false;
        node_hit[w] = true;
    }
    std::vector<bool> edge_hit(m.codomain.edge_count(), false);
    for (EdgeId f : m.edge_map) {
        if (f < 0 || f >= m.codomain.edge_count() || edge_hit[f])
            return false;
        edge_hit[f] = true;
    }
    return true;
}

bool is_valid_morphism(const Morphism& m) {
    if (static_cast<int>(m.node_map.size()) != m.domain.node_count() ||
        static_cast<int>(m.edge_map.size()) != m.domain.edge_count())
        return false;
    return is_structure_preserving(m);
}

Morphism compose(const Morphism& f, const Morphism& g) {
    assert(f.codomain == g.domain);
    Morphism h;
    h.domain = f.domain;
    h.codomain = g.codomain;
    h.node_map.reserve(f.node_map.size());
    h.edge_map.reserve(f.edge_map.size());
    for (NodeId v : f.node_map)
        h.node_map.push_back(g.node_map[v]);
    for (EdgeId e : f.edge_map)
        h.edge_map.push_back(g.edge_map[e]);
    return h;
}

Morphism restrict_to_prefix(const Morphism& m, int nodes, int edges) {
    assert(nodes <= m.domain.node_count() && edges <= m.domain.edge_count());
    Morphism r;
    for (NodeId v = 0; v < nodes; ++v)
        r.domain.add_node(m.domain.node_label(v));
    for (EdgeId e = 0; e < edges; ++e) {
        const Graph::Edge& de = m.domain.edge(e);
        assert(de.src < nodes && de.tgt < nodes);
        r.domain.add_edge(de.src, de.tgt, de.label);
    }
    r.codomain = m.codomain;
    r.node_map.assign(m.node_map.begin(), m.node_map.begin() + nodes);
    r.edge_map.assign(m.edge_map.begin(), m.edge_map.begin() + edges);
    return r;
}

} // namespace gtv
