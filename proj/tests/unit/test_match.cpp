#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtv/match.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gtv;

namespace {

Graph junction_track_junction() {
    Graph g;
    NodeId a = g.add_node("junction");
    NodeId b = g.add_node("junction");
    g.add_edge(a, b, "track");
    return g;
}

} // namespace

TEST_CASE("single-node pattern matches every equally labeled node") {
    Graph pattern;
    pattern.add_node("junction");
    Graph host = junction_track_junction();
    auto ms = enumerate_injective_morphisms(pattern, host);
    CHECK(ms.size() == 2);
    for (const Morphism& m : ms) {
        CHECK(is_valid_morphism(m));
        CHECK(is_injective(m));
    }
}

TEST_CASE("empty pattern has exactly the empty morphism") {
    Graph empty;
    Graph host = junction_track_junction();
    auto ms = enumerate_injective_morphisms(empty, host);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].node_map.empty());
    CHECK(ms[0].edge_map.empty());
    CHECK(enumerate_injective_morphisms(empty, empty).size() == 1);
}

TEST_CASE("edge labels discriminate parallel edges") {
    // host: junction -track-> junction with a parallel car edge
    Graph host = junction_track_junction();
    host.add_edge(0, 1, "car");
    Graph pattern = junction_track_junction();
    auto ms = enumerate_injective_morphisms(pattern, host);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].edge_map[0] == 0); // the track edge, not the car edge
}

TEST_CASE("matches are injective even on parallel structure") {
    Graph host;
    NodeId a = host.add_node("junction");
    NodeId b = host.add_node("junction");
    host.add_edge(a, b, "track");
    host.add_edge(a, b, "track");
    Graph pattern;
    NodeId pa = pattern.add_node("junction");
    NodeId pb = pattern.add_node("junction");
    pattern.add_edge(pa, pb, "track");
    pattern.add_edge(pa, pb, "track");
    // two node maps cannot work (edges are directed a->b only); one node map
    // with 2 ways to assign the two parallel pattern edges injectively
    auto ms = enumerate_injective_morphisms(pattern, host);
    CHECK(ms.size() == 2);
    for (const Morphism& m : ms) {
        CHECK(m.edge_map[0] != m.edge_map[1]);
    }
}

TEST_CASE("patterns over the object alphabet never match tag nodes") {
    Graph pattern;
    pattern.add_node("junction");
    Graph host = junction_track_junction();
    Graph tagged = attach_tag(host, "q0", {"q0", "q1"});
    CHECK(enumerate_injective_morphisms(pattern, host).size() ==
          enumerate_injective_morphisms(pattern, tagged).size());
}

TEST_CASE("pre-assignment pins pattern elements") {
    Graph pattern;
    pattern.add_node("junction");
    Graph host = junction_track_junction();
    PartialAssignment pin;
    pin.nodes = {1};
    auto ms = enumerate_injective_morphisms(pattern, host, pin);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].node_map[0] == 1);
}

TEST_CASE("has_injective_morphism agrees with nonempty enumeration") {
    test::Rng rng(7);
    std::vector<std::string> labels = {"a", "b"};
    for (int i = 0; i < 200; ++i) {
        Graph pattern = test::random_graph(rng, 3, 3, labels);
        Graph host = test::random_graph(rng, 4, 5, labels);
        CHECK(has_injective_morphism(pattern, host) ==
              !enumerate_injective_morphisms(pattern, host).empty());
    }
}

TEST_CASE("enumeration is deterministic") {
    test::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        Graph pattern = test::random_graph(rng, 3, 3, {"a", "b"});
        Graph host = test::random_graph(rng, 5, 6, {"a", "b"});
        CHECK(enumerate_injective_morphisms(pattern, host) ==
              enumerate_injective_morphisms(pattern, host));
    }
}

TEST_CASE("enumeration equals the brute-force oracle on random graphs") {
    test::Rng rng(20240802);
    std::vector<std::string> labels = {"a", "b", "c"};
    for (int i = 0; i < 400; ++i) {
        Graph pattern = test::random_graph(rng, 3, 3, labels);
        Graph host = test::random_graph(rng, 5, 6, labels);
        auto engine = enumerate_injective_morphisms(pattern, host);
        auto oracle = test::brute_force_morphisms(pattern, host);
        test::sort_morphisms(engine);
        test::sort_morphisms(oracle);
        REQUIRE(engine.size() == oracle.size());
        CHECK(engine == oracle);
        for (const Morphism& m : engine) {
            CHECK(is_valid_morphism(m));
            CHECK(is_injective(m));
        }
    }
}

TEST_CASE("morphism toolbox: identity, composition, prefix restriction") {
    Graph g = junction_track_junction();
    Morphism id = identity_morphism(g);
    CHECK(is_valid_morphism(id));
    CHECK(compose(id, id) == id);

    // compose a pattern match with an inclusion
    Graph pattern;
    pattern.add_node("junction");
    auto ms = enumerate_injective_morphisms(pattern, g);
    REQUIRE(ms.size() == 2);
    CHECK(compose(ms[0], id).node_map == ms[0].node_map);

    Morphism restricted = restrict_to_prefix(id, 1, 0);
    CHECK(restricted.domain.node_count() == 1);
    CHECK(restricted.node_map == std::vector<NodeId>{0});
}
