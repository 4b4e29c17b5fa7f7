#ifndef GTV_REPORT_HPP
#define GTV_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "gtv/correctness.hpp"

namespace gtv {

/*
  JSON rendering of a correctness report with a pinned field order (see
  docs/report-schema.md):

    { verdict, kind, k, method, states, complete, witness: [{rule, role,
      graph}], ... }

  `k` is null for kinds without a bound, `witness` is always present (empty
  array when there is none), `loopStart` appears for lasso-shaped witnesses,
  `agreement` / `defect` appear when both methods ran, `note` when nonempty,
  and `methods` lists the per-method detail. Output is deterministic:
  identical reports serialize byte-identically.
*/
std::string report_to_json(const CorrectnessReport& r, Method requested);

// Human-readable rendering of the same information.
std::string report_to_text(const CorrectnessReport& r, Method requested);

// Compact one-line graph rendering used by the text report and simulate.
std::string graph_to_text(const Graph& g);

/*
  Deterministic DOT rendering of an explored state space. Each state is
  labeled with its index, its automaton tag, its marking tag (when present)
  and the names of the satisfied constraints, evaluated on the tag-free
  graph. Environment transitions are dashed, skip transitions dotted, initial
  states doubly bordered.
*/
std::string export_dot(const Lts& l, const RegulationAutomaton& a,
                       const std::vector<std::pair<std::string, Condition>>&
                           constraints = {});

} // namespace gtv

#endif
