#include "gtv/graph.hpp"

#include <cassert>

#include "gtv/errors.hpp"

namespace gtv {

NodeId Graph::add_node(std::string label) {
    node_labels_.push_back(std::move(label));
    return node_count() - 1;
}

EdgeId Graph::add_edge(NodeId src, NodeId tgt, std::string label) {
    assert(has_node(src) && has_node(tgt));
    edges_.push_back(Edge{src, tgt, std::move(label)});
    return edge_count() - 1;
}

int Graph::degree(NodeId v) const {
    int d = 0;
    for (const Edge& e : edges_) {
        if (e.src == v)
            ++d;
        if (e.tgt == v)
            ++d;
    }
    return d;
}

const std::set<std::string>& marking_labels() {
    static const std::set<std::string> labels = {
        std::string(kMarkTop), std::string(kMarkSys), std::string(kMarkEnv)};
    return labels;
}

Graph attach_tag(const Graph& g, const std::string& label,
                 const std::set<std::string>& ns) {
    assert(ns.count(label));
    if (read_tag(g, ns).has_value())
        throw DuplicateTagError("attach_tag: graph already carries a \"" +
                                *read_tag(g, ns) + "\" tag from this namespace");
    Graph out = g;
    out.add_node(label);
    return out;
}

std::optional<std::string> read_tag(const Graph& g,
                                    const std::set<std::string>& ns) {
    std::optional<std::string> found;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!ns.count(g.node_label(v)) || !g.is_isolated(v))
            continue;
        if (found)
            throw AmbiguousTagError(
                "read_tag: graph carries two tags from one namespace (\"" +
                *found + "\" and \"" + g.node_label(v) + "\")");
        found = g.node_label(v);
    }
    return found;
}

Graph strip_tags(const Graph& g, const std::set<std::string>& ns) {
    std::vector<NodeId> remap(g.node_count(), -1);
    Graph out;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (ns.count(g.node_label(v)) && g.is_isolated(v))
            continue;
        remap[v] = out.add_node(g.node_label(v));
    }
    for (const Graph::Edge& e : g.edges()) {
        assert(remap[e.src] >= 0 && remap[e.tgt] >= 0);
        out.add_edge(remap[e.src], remap[e.tgt], e.label);
    }
    return out;
}

} // namespace gtv
