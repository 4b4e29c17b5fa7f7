#ifndef GTV_SRC_BUCHI_HPP
#define GTV_SRC_BUCHI_HPP

#include <optional>

#include "gtv/ltl.hpp"

namespace gtv::detail {

// Searches for a run of l (from an initial state) violating f: translates
// ¬f into a Büchi automaton via the tableau construction, degeneralizes,
// builds the product with l and runs a nested DFS for an accepting cycle.
// Returns a valid lasso of l on which f evaluates to false, if one exists.
std::optional<Lasso> find_violating_lasso(const Lts& l, const LtlFormula& f,
                                          const AtomTable& atoms);

} // namespace gtv::detail

#endif
