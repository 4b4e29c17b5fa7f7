#ifndef GTV_GRAPH_HPP
#define GTV_GRAPH_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gtv {

using NodeId = int;
using EdgeId = int;

/*
  Finite directed labeled multigraph. Nodes and edges are dense integer ids in
  insertion order; parallel edges and self-loops are allowed. Node and edge
  labels share one string alphabet.

  Graphs are built once with add_node/add_edge and treated as immutable
  afterwards: every engine operation takes graphs by const reference and
  returns fresh values.
*/
class Graph {
public:
    struct Edge {
        NodeId src;
        NodeId tgt;
        std::string label;

        bool operator==(const Edge&) const = default;
    };

    Graph() = default;

    NodeId add_node(std::string label);
    EdgeId add_edge(NodeId src, NodeId tgt, std::string label);

    int node_count() const { return static_cast<int>(node_labels_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    // Size measure used by exploration limits: |V| + |E|.
    int size() const { return node_count() + edge_count(); }
    bool empty() const { return node_labels_.empty() && edges_.empty(); }

    const std::string& node_label(NodeId v) const { return node_labels_[v]; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_node(NodeId v) const { return v >= 0 && v < node_count(); }
    bool has_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

    int degree(NodeId v) const;
    bool is_isolated(NodeId v) const { return degree(v) == 0; }

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::string> node_labels_;
    std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Tag nodes.
//
// Automaton states and markings are carried inside state graphs as isolated
// nodes whose labels come from namespaces disjoint from the object alphabet.
// The marking namespace is fixed; the state namespace is the automaton's
// state set.

inline constexpr std::string_view kMarkTop = "top";
inline constexpr std::string_view kMarkSys = "sys";
inline constexpr std::string_view kMarkEnv = "env";

const std::set<std::string>& marking_labels();

// Returns a copy of g with one fresh isolated node labeled `label` appended.
// `label` must belong to `ns`; throws DuplicateTagError if g already carries
// a tag from that namespace.
Graph attach_tag(const Graph& g, const std::string& label,
                 const std::set<std::string>& ns);

// Reads the unique tag of namespace `ns` from g: nullopt if there is none,
// AmbiguousTagError if there are two or more.
std::optional<std::string> read_tag(const Graph& g,
                                    const std::set<std::string>& ns);

// Returns a copy of g with every isolated node labeled from `ns` removed.
Graph strip_tags(const Graph& g, const std::set<std::string>& ns);

} // namespace gtv

#endif
