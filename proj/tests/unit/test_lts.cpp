#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <tuple>

#include "gtv/canonical.hpp"
#include "gtv/errors.hpp"
#include "gtv/joint.hpp"
#include "gtv/lts.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gtv;

namespace {

// L = ∅ ⇒ R = one "a" node: applicable everywhere, grows without bound.
Rule spawn_rule() {
    PlainRule p;
    p.name = "Spawn";
    p.right.add_node("a");
    Condition ac = Condition::truth(p.left);
    return Rule(std::move(p), std::move(ac), Role::System);
}

// L = one "a" node ⇒ ∅: consumes isolated nodes until none are left.
Rule drop_rule() {
    PlainRule p;
    p.name = "Drop";
    p.left.add_node("a");
    Condition ac = Condition::truth(p.left);
    return Rule(std::move(p), std::move(ac), Role::System);
}

Graph nodes(int n, const std::string& label = "a") {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_node(label);
    return g;
}

const TransformationStep& step_by_base(const std::vector<TransformationStep>& steps,
                                       const std::string& base) {
    for (const TransformationStep& s : steps) {
        if (s.base == base) return s;
    }
    REQUIRE_MESSAGE(false, "no applicable step for " << base);
    return steps.front();
}

} // namespace

TEST_CASE("no rules: a single inert state") {
    Graph init = nodes(2);
    Lts l = explore(std::vector<Rule>{}, std::vector<Graph>{init});
    REQUIRE(l.states.size() == 1);
    CHECK(l.keys[0] == canonical_key(init));
    CHECK(l.initial == std::vector<int>{0});
    CHECK(l.transitions.empty());
    CHECK(l.complete);
    CHECK(l.expanded[0]);
    CHECK(l.truncation_note.empty());
    CHECK_FALSE(l.every_state_has_successor());
}

TEST_CASE("isomorphic initial graphs collapse into one state") {
    test::Rng rng(20240816);
    Graph a = test::random_graph(rng, 4, 3, {"a", "b"});
    Graph b = test::permuted_copy(rng, a);
    Lts l = explore(std::vector<Rule>{}, std::vector<Graph>{a, b});
    CHECK(l.states.size() == 1);
    CHECK(l.initial == std::vector<int>{0});

    Graph c = nodes(7);
    Lts two = explore(std::vector<Rule>{}, std::vector<Graph>{a, c});
    CHECK(two.initial == std::vector<int>{0, 1});
}

TEST_CASE("isomorphic successors merge, parallel rule steps dedupe") {
    // two interchangeable "broken" nodes: both Fix matches give the same class
    PlainRule p;
    p.name = "Fix";
    p.left.add_node("broken");
    p.right.add_node("ok");
    Condition ac = Condition::truth(p.left);
    Rule fix(std::move(p), std::move(ac), Role::System);

    Graph init = nodes(2, "broken");
    Lts l = explore(std::vector<Rule>{fix}, std::vector<Graph>{init});
    REQUIRE(l.states.size() == 3); // {broken,broken}, {broken,ok}, {ok,ok}
    CHECK(l.transitions.size() == 2);
    CHECK(l.complete);
}

TEST_CASE("exploration is deterministic") {
    test::Rng rng(20240817);
    for (int i = 0; i < 20; ++i) {
        test::RandomModel rm = test::random_model(rng, false);
        std::vector<Rule> joint = build_joint([&] {
            GtsModel m = rm.model;
            m.automaton = properize(m.automaton);
            return m;
        }());
        GtsModel proper = rm.model;
        proper.automaton = properize(proper.automaton);
        std::vector<Graph> inits = {joint_initial(rm.init, proper.automaton)};
        ExplorationLimits limits{.max_states = 300, .max_depth = 4,
                                 .max_graph_size = 80};
        Lts a = explore(joint, inits, limits);
        Lts b = explore(joint, inits, limits);
        CHECK(a.keys == b.keys);
        CHECK(a.transitions == b.transitions);
        CHECK(a.initial == b.initial);
        CHECK(a.expanded == b.expanded);
        CHECK(a.complete == b.complete);
    }
}

TEST_CASE("recorded transitions are exactly the engine's steps") {
    test::Rng rng(20240818);
    for (int i = 0; i < 15; ++i) {
        test::RandomModel rm = test::random_model(rng, false);
        GtsModel proper = rm.model;
        proper.automaton = properize(proper.automaton);
        std::vector<Rule> joint = build_joint(proper);
        Lts l = explore(joint,
                        std::vector<Graph>{joint_initial(rm.init, proper.automaton)},
                        ExplorationLimits{.max_states = 200, .max_depth = 3,
                                          .max_graph_size = 80});
        for (std::size_t s = 0; s < l.states.size(); ++s) {
            CHECK(l.keys[s] == canonical_key(l.states[s]));
        }
        std::set<std::tuple<int, std::string, int>> recorded;
        for (const LtsTransition& t : l.transitions) {
            recorded.insert({t.from, t.label.rule, t.to});
        }
        CHECK(recorded.size() == l.transitions.size());
        std::map<std::string, int> index_of;
        for (std::size_t s = 0; s < l.states.size(); ++s) {
            index_of[l.keys[s]] = static_cast<int>(s);
        }
        std::set<std::tuple<int, std::string, int>> expected;
        for (std::size_t s = 0; s < l.states.size(); ++s) {
            if (!l.expanded[s]) continue;
            for (const TransformationStep& step :
                 direct_transformations(joint, l.states[s])) {
                auto it = index_of.find(canonical_key(step.after));
                REQUIRE(it != index_of.end()); // complete within the region
                expected.insert({static_cast<int>(s), step.rule, it->second});
            }
        }
        for (const LtsTransition& t : l.transitions) {
            if (!l.expanded[t.from]) continue;
            CHECK(expected.count({t.from, t.label.rule, t.to}) == 1);
        }
        for (const auto& e : expected) {
            CHECK(recorded.count(e) == 1);
        }
    }
}

TEST_CASE("state cap truncates and is reported") {
    Lts l = explore(std::vector<Rule>{spawn_rule()}, std::vector<Graph>{nodes(0)},
                    ExplorationLimits{.max_states = 5, .max_depth = 1000,
                                      .max_graph_size = 1000});
    CHECK(l.states.size() == 5);
    CHECK_FALSE(l.complete);
    CHECK(l.truncation_note == "state cap hit");
    CHECK_FALSE(l.expanded.back());
}

TEST_CASE("depth cap leaves the frontier unexpanded") {
    Lts l = explore(std::vector<Rule>{spawn_rule()}, std::vector<Graph>{nodes(0)},
                    ExplorationLimits{.max_states = 1000, .max_depth = 2,
                                      .max_graph_size = 1000});
    CHECK(l.states.size() == 3); // sizes 0, 1, 2
    CHECK_FALSE(l.complete);
    CHECK(l.truncation_note == "depth cap hit");
    CHECK(l.expanded[0]);
    CHECK(l.expanded[1]);
    CHECK_FALSE(l.expanded[2]);
    CHECK(l.transitions.size() == 2);
}

TEST_CASE("oversized successors and initial graphs are reported") {
    Lts l = explore(std::vector<Rule>{spawn_rule()}, std::vector<Graph>{nodes(3)},
                    ExplorationLimits{.max_states = 1000, .max_depth = 1000,
                                      .max_graph_size = 3});
    CHECK(l.states.size() == 1);
    CHECK_FALSE(l.complete);
    CHECK(l.truncation_note == "successor over size limit");
    CHECK_FALSE(l.expanded[0]);

    Lts big = explore(std::vector<Rule>{spawn_rule()}, std::vector<Graph>{nodes(9)},
                      ExplorationLimits{.max_states = 1000, .max_depth = 1000,
                                        .max_graph_size = 8});
    CHECK(big.states.empty());
    CHECK(big.initial.empty());
    CHECK_FALSE(big.complete);
    CHECK(big.truncation_note == "initial graph over size limit");
}

TEST_CASE("complete_lts closes deadlocks with skip loops") {
    Lts l = explore(std::vector<Rule>{drop_rule()}, std::vector<Graph>{nodes(2)});
    REQUIRE(l.states.size() == 3);
    CHECK(l.complete);
    CHECK_FALSE(l.every_state_has_successor());

    Lts done = complete_lts(l);
    CHECK(done.completed_with_skip);
    CHECK(done.every_state_has_successor());
    CHECK(done.transitions.size() == l.transitions.size() + 1);
    const LtsTransition& added = done.transitions.back();
    CHECK(added.from == added.to);
    CHECK(added.label.rule == "Skip");
    CHECK(added.label.role == Role::Skip);
    CHECK(done.states[added.from].node_count() == 0); // the drained state

    // already-total systems gain nothing but the flag
    auto relabel = [](const std::string& name, const std::string& from,
                      const std::string& to) {
        PlainRule p;
        p.name = name;
        p.left.add_node(from);
        p.right.add_node(to);
        Condition ac = Condition::truth(p.left);
        return Rule(std::move(p), std::move(ac), Role::System);
    };
    std::vector<Rule> toggle = {relabel("Fix", "broken", "ok"),
                                relabel("Break", "ok", "broken")};
    Lts spun = explore(toggle, std::vector<Graph>{nodes(1, "broken")});
    REQUIRE(spun.complete);
    CHECK(spun.every_state_has_successor());
    Lts same = complete_lts(spun);
    CHECK(same.transitions == spun.transitions);
    CHECK(same.completed_with_skip);
}

TEST_CASE("lasso helpers") {
    Lts l;
    for (int i = 0; i < 3; ++i) {
        l.states.push_back(nodes(i));
        l.keys.push_back("k" + std::to_string(i));
        l.expanded.push_back(true);
    }
    l.initial = {0};
    TransitionLabel t{"t", "t", Role::System};
    l.transitions = {{0, t, 1}, {1, t, 2}, {2, t, 1}};
    l.complete = true;
    l.rebuild_out_index();

    CHECK(lasso_states(Lasso{{0}, {1, 2}}) == std::vector<int>{0, 1, 2});
    CHECK(lasso_is_valid(l, Lasso{{0}, {1, 2}}));
    CHECK(lasso_is_valid(l, Lasso{{}, {1, 2}}));
    CHECK_FALSE(lasso_is_valid(l, Lasso{{}, {0}}));     // no self-loop at 0
    CHECK_FALSE(lasso_is_valid(l, Lasso{{0, 1}, {2}})); // 2 has no self-loop
    CHECK_FALSE(lasso_is_valid(l, Lasso{{0}, {}}));     // empty loop
    CHECK_FALSE(lasso_is_valid(l, Lasso{{}, {1, 7}}));  // out of range
    CHECK_FALSE(lasso_is_valid(l, Lasso{{1}, {1, 2}})); // 1 -> 1 missing
}

TEST_CASE("projecting a joint trace recovers run and graphs") {
    CompiledModel cm = test::load_model_path(GTV_MODELS_DIR "/tns.gts");
    GtsModel m{cm.rules, cm.automata.at("A")};
    const Graph& g0 = cm.graphs.at("G0");
    std::vector<Rule> joint = build_joint(m);

    Graph current = joint_initial(g0, m.automaton);
    std::vector<TransformationStep> trace;
    for (const std::string& base : {"Ascend", "Ascend", "Block", "Repair"}) {
        TransformationStep s =
            step_by_base(direct_transformations(joint, current), base);
        trace.push_back(s);
        current = s.after;
    }

    ProjectedTrace p = project_trace(joint_initial(g0, m.automaton), trace,
                                     m.automaton);
    CHECK(p.run == std::vector<std::string>{"q0", "q0", "q0", "q1", "q0"});
    CHECK(p.markings.empty());
    CHECK(p.rules == std::vector<std::string>{"Ascend[q0->q0]", "Ascend[q0->q0]",
                                              "Block[q0->q1]", "Repair[q1->q0]"});
    CHECK(p.roles == std::vector<Role>{Role::System, Role::System,
                                       Role::Environment, Role::System});
    REQUIRE(p.graphs.size() == 5);
    CHECK(p.graphs[0] == g0);
    for (const Graph& g : p.graphs) {
        CHECK(read_tag(g, state_labels(m.automaton)) == std::nullopt);
    }
}

TEST_CASE("projecting an annotated trace recovers the markings") {
    CompiledModel cm = test::load_model_path(GTV_MODELS_DIR "/tns.gts");
    GtsModel m{cm.rules, cm.automata.at("A")};
    const Graph& g0 = cm.graphs.at("G0");
    std::vector<Rule> annotated = build_annotated(m);

    Graph current = annotated_initial(g0, m.automaton);
    std::vector<TransformationStep> trace;
    for (const std::string& base : {"Ascend", "Ascend", "Block", "Repair"}) {
        TransformationStep s =
            step_by_base(direct_transformations(annotated, current), base);
        trace.push_back(s);
        current = s.after;
    }

    ProjectedTrace p = project_trace(annotated_initial(g0, m.automaton), trace,
                                     m.automaton);
    CHECK(p.run == std::vector<std::string>{"q0", "q0", "q0", "q1", "q0"});
    CHECK(p.markings ==
          std::vector<std::string>{"top", "sys", "sys", "env", "sys"});
    CHECK(p.graphs[0] == g0);
}

TEST_CASE("projection demands exactly one automaton tag per state") {
    CompiledModel cm = test::load_model_path(GTV_MODELS_DIR "/tns.gts");
    const RegulationAutomaton& a = cm.automata.at("A");
    Graph untagged = cm.graphs.at("G0");
    CHECK_THROWS_AS(
        (void)project_trace(untagged, std::vector<TransformationStep>{}, a),
        MissingTagError);

    Graph doubled = joint_initial(untagged, a);
    doubled.add_node("q1");
    CHECK_THROWS_AS(
        (void)project_trace(doubled, std::vector<TransformationStep>{}, a),
        AmbiguousTagError);
}
