#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "gtv/canonical.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gtv;

TEST_CASE("permuted copies share one canonical key") {
    test::Rng rng(20240803);
    for (int i = 0; i < 200; ++i) {
        Graph g = test::random_graph(rng, 5, 6, {"a", "b", "track"});
        Graph h = test::permuted_copy(rng, g);
        CHECK(canonical_key(g) == canonical_key(h));
    }
}

TEST_CASE("reversing an edge changes the key") {
    Graph g;
    NodeId a = g.add_node("junction");
    NodeId b = g.add_node("junction");
    g.add_edge(a, b, "track");
    Graph h;
    NodeId c = h.add_node("junction");
    NodeId d = h.add_node("junction");
    h.add_edge(d, c, "track");
    // same key: reversal is an isomorphism here (swap the two nodes)
    CHECK(canonical_key(g) == canonical_key(h));

    // pin the direction with distinct node labels: now reversal matters
    Graph p;
    p.add_node("a");
    p.add_node("b");
    p.add_edge(0, 1, "track");
    Graph q;
    q.add_node("a");
    q.add_node("b");
    q.add_edge(1, 0, "track");
    CHECK(canonical_key(p) != canonical_key(q));
    CHECK_FALSE(test::brute_force_isomorphic(p, q));
}

TEST_CASE("state tags separate isomorphism classes") {
    Graph g;
    g.add_node("junction");
    const std::set<std::string> states = {"q0", "q1"};
    CHECK(canonical_key(attach_tag(g, "q0", states)) !=
          canonical_key(attach_tag(g, "q1", states)));
}

TEST_CASE("canonical form is a stable isomorphic representative") {
    test::Rng rng(20240804);
    for (int i = 0; i < 100; ++i) {
        Graph g = test::random_graph(rng, 5, 6, {"a", "b"});
        CanonicalForm form = canonical_form(g);
        CHECK(test::brute_force_isomorphic(g, form.graph));
        CHECK(canonical_key(form.graph) == form.key);
        CHECK(canonical_key(g) == form.key);
    }
}

TEST_CASE("key equality coincides with brute-force isomorphism (random pairs)") {
    test::Rng rng(20240805);
    for (int i = 0; i < 300; ++i) {
        Graph g = test::random_graph(rng, 5, 5, {"a", "b"});
        Graph h = rng.coin(0.4) ? test::permuted_copy(rng, g)
                                : test::mutated_copy(rng, g);
        CHECK((canonical_key(g) == canonical_key(h)) ==
              test::brute_force_isomorphic(g, h));
    }
}

namespace {

// All graphs with at most `max_nodes` nodes over {A,B} node labels and at
// most 2 edges over {x,y} edge labels, each endpoint combination allowed.
std::vector<Graph> exhaustive_family(int max_nodes) {
    std::vector<Graph> out;
    const std::vector<std::string> node_labels = {"A", "B"};
    const std::vector<std::string> edge_labels = {"x", "y"};
    for (int n = 0; n <= max_nodes; ++n) {
        int labelings = 1;
        for (int i = 0; i < n; ++i) labelings *= 2;
        for (int mask = 0; mask < labelings; ++mask) {
            Graph base;
            for (int i = 0; i < n; ++i) {
                base.add_node(node_labels[(mask >> i) & 1]);
            }
            // enumerate edge multisets of size 0..2 over (src,tgt,label)
            struct Slot {
                int src, tgt, label;
            };
            std::vector<Slot> slots;
            for (int s = 0; s < n; ++s) {
                for (int t = 0; t < n; ++t) {
                    for (int lab = 0; lab < 2; ++lab) slots.push_back({s, t, lab});
                }
            }
            out.push_back(base); // no edges
            for (std::size_t e1 = 0; e1 < slots.size(); ++e1) {
                Graph g1 = base;
                g1.add_edge(slots[e1].src, slots[e1].tgt, edge_labels[slots[e1].label]);
                out.push_back(g1);
                for (std::size_t e2 = e1; e2 < slots.size(); ++e2) {
                    Graph g2 = g1;
                    g2.add_edge(slots[e2].src, slots[e2].tgt,
                                edge_labels[slots[e2].label]);
                    out.push_back(g2);
                }
            }
        }
    }
    return out;
}

// Invariant-preserving coarse signature: graphs in different buckets are
// trivially non-isomorphic, so only same-bucket pairs need the oracle.
std::string coarse_profile(const Graph& g) {
    std::multiset<std::string> nodes;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        nodes.insert(g.node_label(v) + "/" + std::to_string(g.degree(v)));
    }
    std::multiset<std::string> edges;
    for (const Graph::Edge& e : g.edges()) edges.insert(e.label);
    std::string profile;
    for (const std::string& s : nodes) profile += s + ";";
    profile += "|";
    for (const std::string& s : edges) profile += s + ";";
    return profile;
}

} // namespace

TEST_CASE("key equality equals isomorphism on an exhaustive small family") {
    std::vector<Graph> family = exhaustive_family(3);
    std::map<std::string, std::vector<int>> buckets;
    std::vector<std::string> keys(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        keys[i] = canonical_key(family[i]);
        buckets[coarse_profile(family[i])].push_back(static_cast<int>(i));
    }
    long checked = 0;
    for (const auto& [profile, members] : buckets) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                int a = members[i], b = members[j];
                bool same_key = keys[a] == keys[b];
                bool iso = test::brute_force_isomorphic(family[a], family[b]);
                ++checked;
                REQUIRE_MESSAGE(same_key == iso,
                                "bucket " << profile << " pair " << a << "," << b);
            }
        }
    }
    CHECK(checked > 1000); // the family is genuinely exercised
}

TEST_CASE("highly symmetric graphs canonicalize quickly") {
    // many interchangeable nodes: worst case for naive individualization
    Graph g;
    for (int i = 0; i < 12; ++i) g.add_node("a");
    for (int i = 0; i < 3; ++i) {
        int base = i * 3;
        g.add_edge(base, base + 1, "x");
        g.add_edge(base + 1, base + 2, "x");
        g.add_edge(base + 2, base, "x");
    }
    test::Rng rng(99);
    std::string key = canonical_key(g);
    for (int i = 0; i < 5; ++i) {
        CHECK(canonical_key(test::permuted_copy(rng, g)) == key);
    }
}
