#ifndef GTV_LTS_HPP
#define GTV_LTS_HPP

#include <span>
#include <string>
#include <vector>

#include "gtv/automaton.hpp"
#include "gtv/rule.hpp"

namespace gtv {

struct ExplorationLimits {
    int max_states = 5000;
    int max_depth = 1000000000;
    int max_graph_size = 1000; // |V| + |E| per state graph
};

struct TransitionLabel {
    std::string rule; // display name of the applied rule
    std::string base; // underlying rule name
    Role role;

    bool operator==(const TransitionLabel&) const = default;
};

struct LtsTransition {
    int from;
    TransitionLabel label;
    int to;

    bool operator==(const LtsTransition&) const = default;
};

/*
  Labeled transition system over isomorphism classes of state graphs. States
  are numbered in breadth-first discovery order and hold one canonicalized
  representative each; `keys` are the matching canonical keys.

  `complete` is false iff some limit truncated the exploration (state cap,
  depth cap, or an oversized successor). `expanded[i]` records whether state
  i's successors were fully computed and recorded — the "explored region" a
  definite counterexample may use. Truncated states keep whatever transitions
  were recorded before the cap hit.
*/
struct Lts {
    std::vector<Graph> states;
    std::vector<std::string> keys;
    std::vector<int> initial;
    std::vector<LtsTransition> transitions;
    std::vector<bool> expanded;
    bool complete = true;
    bool completed_with_skip = false; // set by complete_lts
    std::string truncation_note;

    // transition indices grouped by source state; rebuilt by the engine
    std::vector<std::vector<int>> out;

    void rebuild_out_index();
    std::vector<int> successors(int state) const;
    bool every_state_has_successor() const;
};

// Breadth-first exploration of the given rules from the initial graphs,
// deduplicating states by canonical key. Deterministic: initial graphs in
// order, states expanded in index order, successors by rule declaration and
// match enumeration order.
Lts explore(std::span<const Rule> rules, std::span<const Graph> inits,
            const ExplorationLimits& limits = {});

// Adds a (Skip, skip) self-loop to every state with out-degree zero. On a
// complete LTS those are exactly the deadlocked states, making every state
// head an infinite run.
Lts complete_lts(Lts l);

// Ultimately periodic run: states prefix[0..] then loop[0..] repeated
// forever. Consecutive states (and the loop's wrap-around) are connected by
// transitions of the LTS the lasso refers to.
struct Lasso {
    std::vector<int> prefix;
    std::vector<int> loop; // nonempty

    bool operator==(const Lasso&) const = default;
};

// The state sequence prefix + loop (one unrolling).
std::vector<int> lasso_states(const Lasso& l);

// True iff the lasso's consecutive states are connected in l and the last
// loop state connects back to the first loop state.
bool lasso_is_valid(const Lts& l, const Lasso& lasso);

/*
  Projection of a joint / annotated trace back to the underlying alphabet:
  per state the Q tag, the marking tag (if any) and the tag-free graph.
  Sequences are aligned: graphs/run/markings have steps.size() + 1 entries,
  entry 0 describing `initial`. Throws MissingTagError if a state lacks its
  Q tag, AmbiguousTagError on duplicated tags.
*/
struct ProjectedTrace {
    std::vector<Graph> graphs;         // tag-free state graphs
    std::vector<std::string> run;      // automaton states q0, q1, ...
    std::vector<std::string> markings; // empty unless the trace is annotated
    std::vector<std::string> rules;    // applied rule display names (size n)
    std::vector<Role> roles;
};

ProjectedTrace project_trace(const Graph& initial,
                             std::span<const TransformationStep> steps,
                             const RegulationAutomaton& automaton);

} // namespace gtv

#endif
