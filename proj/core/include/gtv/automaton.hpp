#ifndef GTV_AUTOMATON_HPP
#define GTV_AUTOMATON_HPP

#include <set>
#include <string>
#include <vector>

namespace gtv {

/*
  Regulation automaton ⟨Q, q0, δ, select⟩: a finite control skeleton whose
  transitions each select the subset of rules allowed while taking that
  transition. δ is stored as a transition list with unique (from, to) pairs;
  the selection keeps its declaration order for deterministic rule
  generation.
*/
struct AutomatonTransition {
    std::string from;
    std::string to;
    std::vector<std::string> selection; // rule names, possibly empty

    bool operator==(const AutomatonTransition&) const = default;
};

struct RegulationAutomaton {
    std::string name;
    std::vector<std::string> states;
    std::string start;
    std::vector<AutomatonTransition> transitions;

    bool operator==(const RegulationAutomaton&) const = default;
};

// States unique and nonempty, start and transition endpoints declared,
// (from, to) pairs unique, no duplicate rule inside one selection.
bool is_valid_automaton(const RegulationAutomaton& a);

// Proper iff no transition selects the empty set and every non-start state
// is reachable from the start through δ.
bool is_proper(const RegulationAutomaton& a);

/*
  Properization: keep the states reachable from the start without crossing
  empty-selection transitions, restrict δ to those states and drop the empty
  selections. The result is proper and admits exactly the transformation
  sequences of the original when used in the joint construction (empty
  selections contribute no rules; unreachable states contribute no reachable
  ones).
*/
RegulationAutomaton properize(const RegulationAutomaton& a);

// The state-tag namespace of this automaton.
std::set<std::string> state_labels(const RegulationAutomaton& a);

} // namespace gtv

#endif
