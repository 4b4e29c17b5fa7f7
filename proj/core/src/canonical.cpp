#include "gtv/canonical.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <tuple>
#include <vector>

namespace gtv {

namespace {

// Length-prefixed so arbitrary label strings cannot collide with separators.
void append_token(std::string& out, const std::string& s) {
    out += std::to_string(s.size());
    out += ':';
    out += s;
}

// Deterministic serialization of a graph as-is (node order and edge order are
// taken literally; callers pass graphs already in canonical order).
std::string serialize(const Graph& g) {
    std::string out = "V";
    out += std::to_string(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        append_token(out, g.node_label(v));
    out += "E";
    out += std::to_string(g.edge_count());
    for (const Graph::Edge& e : g.edges()) {
        out += std::to_string(e.src);
        out += '>';
        out += std::to_string(e.tgt);
        append_token(out, e.label);
    }
    return out;
}

class Canonicalizer {
public:
    explicit Canonicalizer(const Graph& g) : g_(g) {
        incidence_.resize(g.node_count());
        for (const Graph::Edge& e : g.edges()) {
            incidence_[e.src].emplace_back(0, e.label, e.tgt);
            incidence_[e.tgt].emplace_back(1, e.label, e.src);
            ++edge_counts_[{e.src, e.tgt, e.label}];
        }
    }

    CanonicalForm run() {
        std::vector<int> colors = initial_colors();
        refine(colors);
        recurse(colors);
        assert(!best_key_.empty() || g_.node_count() == 0);
        return CanonicalForm{std::move(best_graph_), std::move(best_key_)};
    }

private:
    std::vector<int> initial_colors() const {
        std::vector<std::string> labels;
        labels.reserve(g_.node_count());
        for (NodeId v = 0; v < g_.node_count(); ++v)
            labels.push_back(g_.node_label(v));
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        std::vector<int> colors(g_.node_count());
        for (NodeId v = 0; v < g_.node_count(); ++v)
            colors[v] = static_cast<int>(
                std::lower_bound(labels.begin(), labels.end(), g_.node_label(v)) -
                labels.begin());
        return colors;
    }

    // One node's refinement signature: current color plus the multiset of
    // (direction, edge label, neighbor color) over all incident edges.
    using Signature = std::pair<int, std::vector<std::tuple<int, std::string, int>>>;

    Signature signature(NodeId v, const std::vector<int>& colors) const {
        Signature sig;
        sig.first = colors[v];
        sig.second.reserve(incidence_[v].size());
        for (const auto& [dir, label, other] : incidence_[v])
            sig.second.emplace_back(dir, label, colors[other]);
        std::sort(sig.second.begin(), sig.second.end());
        return sig;
    }

    // Iterate until the partition stops splitting. Colors are normalized to
    // the rank of the node's signature, so color ids are isomorphism
    // invariants of the partition (never dependent on input node order).
    void refine(std::vector<int>& colors) const {
        int n = g_.node_count();
        for (;;) {
            std::map<Signature, int> ranks;
            std::vector<Signature> sigs;
            sigs.reserve(n);
            for (NodeId v = 0; v < n; ++v) {
                sigs.push_back(signature(v, colors));
                ranks.emplace(sigs.back(), 0);
            }
            int next = 0;
            for (auto& [sig, rank] : ranks)
                rank = next++;
            std::vector<int> refined(n);
            for (NodeId v = 0; v < n; ++v)
                refined[v] = ranks[sigs[v]];
            if (refined == colors)
                return;
            colors = std::move(refined);
        }
    }

    // First color class with two or more members, by color id. The class is
    // identified purely by the (invariant) partition, so the branching
    // structure is the same for isomorphic inputs.
    std::vector<NodeId> ambiguous_cell(const std::vector<int>& colors) const {
        std::map<int, std::vector<NodeId>> cells;
        for (NodeId v = 0; v < g_.node_count(); ++v)
            cells[colors[v]].push_back(v);
        for (auto& [color, members] : cells)
            if (members.size() > 1)
                return members;
        return {};
    }

    // True iff swapping v and w (fixing everything else) maps the edge
    // multiset onto itself. Such a transposition is an automorphism of the
    // colored graph whenever v and w share a color, so the branches obtained
    // by individualizing v or w are isomorphic and yield the same minimum.
    bool swap_is_automorphism(NodeId v, NodeId w) const {
        auto swp = [&](NodeId x) { return x == v ? w : x == w ? v : x; };
        for (NodeId x : {v, w}) {
            for (const auto& [dir, label, other] : incidence_[x]) {
                NodeId s = dir == 0 ? x : other;
                NodeId t = dir == 0 ? other : x;
                auto orig = edge_counts_.find({s, t, label});
                auto image = edge_counts_.find({swp(s), swp(t), label});
                if (image == edge_counts_.end() ||
                    image->second != orig->second)
                    return false;
            }
        }
        return true;
    }

    void recurse(std::vector<int> colors) {
        std::vector<NodeId> cell = ambiguous_cell(colors);
        if (cell.empty()) {
            consider(colors);
            return;
        }
        // Individualize one representative per (cheaply detected) orbit of
        // the cell; remaining branches are explored in full so the minimum
        // certificate covers every ordering that could be canonical.
        int fresh = g_.node_count() + 1;
        std::vector<NodeId> reps;
        for (NodeId v : cell) {
            bool symmetric = false;
            for (NodeId r : reps) {
                if (swap_is_automorphism(r, v)) {
                    symmetric = true;
                    break;
                }
            }
            if (symmetric)
                continue;
            reps.push_back(v);
            std::vector<int> branch = colors;
            branch[v] = fresh;
            refine(branch);
            recurse(std::move(branch));
        }
    }

    // Discrete coloring: colors are a permutation of 0..n-1; build the
    // candidate canonical graph and keep the smallest serialization.
    void consider(const std::vector<int>& colors) {
        int n = g_.node_count();
        std::vector<NodeId> order(n); // order[pos] = original node
        for (NodeId v = 0; v < n; ++v) {
            assert(colors[v] >= 0 && colors[v] < n);
            order[colors[v]] = v;
        }
        Graph cand;
        for (int pos = 0; pos < n; ++pos)
            cand.add_node(g_.node_label(order[pos]));
        std::vector<std::tuple<int, int, std::string>> edges;
        edges.reserve(g_.edge_count());
        for (const Graph::Edge& e : g_.edges())
            edges.emplace_back(colors[e.src], colors[e.tgt], e.label);
        std::sort(edges.begin(), edges.end());
        for (auto& [s, t, label] : edges)
            cand.add_edge(s, t, label);
        std::string key = serialize(cand);
        if (best_key_.empty() || key < best_key_) {
            best_key_ = std::move(key);
            best_graph_ = std::move(cand);
        }
    }

    const Graph& g_;
    // (dir, edge label, other endpoint) per node; dir 0 = outgoing.
    std::vector<std::vector<std::tuple<int, std::string, NodeId>>> incidence_;
    std::map<std::tuple<NodeId, NodeId, std::string>, int> edge_counts_;
    Graph best_graph_;
    std::string best_key_;
};

} // namespace

CanonicalForm canonical_form(const Graph& g) {
    if (g.node_count() == 0)
        return CanonicalForm{g, serialize(g)};
    return Canonicalizer(g).run();
}

std::string canonical_key(const Graph& g) {
    return canonical_form(g).key;
}

} // namespace gtv
