#ifndef GTV_TESTS_ORACLES_HPP
#define GTV_TESTS_ORACLES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtv/condition.hpp"
#include "gtv/graph.hpp"
#include "gtv/joint.hpp"
#include "gtv/lts.hpp"
#include "gtv/ltl.hpp"
#include "gtv/model.hpp"
#include "gtv/morphism.hpp"
#include "gtv/rule.hpp"

namespace gtv::test {

/*
  Reference implementations that deliberately avoid the engine's algorithms:
  exhaustive enumeration instead of backtracking search, permutation search
  instead of canonicalization, lasso enumeration instead of automata. They
  are usable only at toy scale, which is exactly what makes them trustworthy
  as differential oracles.
*/

// Every injective, structure- and label-preserving morphism pattern -> host,
// found by trying all injective node maps and then all per-edge image
// choices. Order is unspecified; compare against the engine as sorted sets.
std::vector<Morphism> brute_force_morphisms(const Graph& pattern, const Graph& host);

// Isomorphism by trying every node bijection and comparing the induced edge
// multisets. Feasible up to ~7 nodes.
bool brute_force_isomorphic(const Graph& a, const Graph& b);

// Condition satisfaction by materializing all injective extensions level by
// level (via brute_force_morphisms) instead of the engine's pinned search.
bool naive_condition_eval(const Morphism& p, const Condition& c);
bool naive_graph_satisfies(const Graph& g, const Condition& c);

// Sorts morphisms by (node_map, edge_map) so oracle and engine output can be
// compared as sets.
void sort_morphisms(std::vector<Morphism>& ms);

// All lassos of l starting at an initial state with prefix+loop length at
// most max_total (walks may revisit states; every loop closure is emitted).
std::vector<Lasso> enumerate_lassos(const Lts& l, int max_total);

// HOLDS iff every lasso with prefix+loop <= |states|+1+slack satisfies f
// (evaluated with eval_ltl_on_lasso). Exhaustive-lasso LTL oracle for small,
// completed LTSs.
bool ltl_lasso_oracle(const Lts& l, const LtlFormula& f, int slack = 0);

// The joint construction applied literally to a possibly non-proper
// automaton: one enriched rule per transition and selected rule, no
// properization, no validation. Used to test that properize preserves
// behavior.
std::vector<Rule> build_joint_raw(const GtsModel& m);

// Successor set a joint state must have by the synchronization property:
// for every automaton transition (q,q') from the state's tag and every
// selected rule r, every plain-level direct transformation G => G' yields
// the tagged successor <G',q'>. Returned as canonical keys paired with the
// underlying rule name.
std::vector<std::pair<std::string, std::string>>
synchronized_successors(const GtsModel& m, const Graph& tagged_state);

// Canonical keys plus base-rule names of the engine's successors of a state.
std::vector<std::pair<std::string, std::string>>
engine_successors(std::span<const Rule> rules, const Graph& state);

/*
  Property-suite drivers. Each returns an empty string on success or a short
  description of the first discrepancy found. `depth` bounds the exploration.
*/

// Synchronization: every reachable joint state's successor set (under the
// engine's enriched rules) equals the set derived from plain-level steps plus
// automaton transitions.
std::string check_synchronization(const GtsModel& m, const Graph& init, int depth);

// Properization preserves behavior: exploring the literally enriched rules of
// the raw automaton and the enriched rules of properize(automaton) from
// <init, q0> yields the same states and transitions.
std::string check_properization(const GtsModel& m, const Graph& init, int depth);

// Annotation correspondence: the joint and annotated systems simulate each
// other modulo marking tags, and each annotated step's fresh marking equals
// the applied rule's role.
std::string check_annotation(const GtsModel& m, const Graph& init, int depth);

/*
  Witness replay for criterion-style validation: every step of every VIOLATED
  method witness must re-execute through the rewrite engine (skip steps must
  sit at genuine deadlocks), and the decoded counterexample must actually
  violate the claimed condition of the query's kind. Returns an empty string
  when everything replays, a description otherwise.
*/
std::string replay_issue(const CorrectnessQuery& q, const CorrectnessReport& rep);

// Reads, parses and compiles a model file; throws on any error.
CompiledModel load_model_path(const std::string& path);

} // namespace gtv::test

#endif
