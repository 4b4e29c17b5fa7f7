#ifndef GTV_JOINT_HPP
#define GTV_JOINT_HPP

#include <set>
#include <span>
#include <string>
#include <vector>

#include "gtv/automaton.hpp"
#include "gtv/rule.hpp"

namespace gtv {

/*
  A graph transformation system (system + environment rules) together with a
  regulation automaton. The joint construction synchronizes rule applications
  with automaton transitions by carrying the current state as a tag node
  inside the graphs: for every transition (q, q') and every rule r it
  selects, an enriched rule ⟨⟨L,q⟩ ⇒ ⟨R,q'⟩, ac⟩ is emitted whose tag node
  lies outside the interface (deleted and recreated, which is what moves the
  automaton along).
*/
struct GtsModel {
    std::vector<Rule> rules; // roles System / Environment, unique names
    RegulationAutomaton automaton;
};

// Enriched rules, ordered by transition declaration and selection order.
// pre: the automaton is valid and proper (run properize first).
// Throws UnknownRuleNameError if a selection names a rule not in m.rules.
std::vector<Rule> build_joint(const GtsModel& m);

/*
  Premarkings of a rule r: the markings a state can carry when r becomes
  applicable somewhere along a run, computed from the automaton alone:

      prm(r) = ⋃ over q ∈ Q_pre(r) of { m(r') | r' with q ∈ Q_post(r') }
               ∪ { top | q0 ∈ Q_pre(r) }

  where Q_pre(r) collects the source states of transitions selecting r,
  Q_post(r') the target states of transitions selecting r', and m(r') is sys
  or env by the role of r'. Contributions that no reachable trace realizes
  are harmless: the corresponding annotated rule is simply never applicable.
*/
std::set<std::string> premarkings(const GtsModel& m, const std::string& rule_name);

// Annotated enriched rules ⟨⟨L,q,m⟩ ⇒ ⟨R,q',m'⟩, ac⟩ with m ranging over the
// premarkings of the underlying rule and m' determined by its role.
// pre: the automaton is valid and proper.
std::vector<Rule> build_annotated(const GtsModel& m);

// ⟨g, q0⟩ resp. ⟨g, q0, top⟩: initial graphs for the joint and annotated
// systems.
Graph joint_initial(const Graph& g, const RegulationAutomaton& a);
Graph annotated_initial(const Graph& g, const RegulationAutomaton& a);

} // namespace gtv

#endif
