#ifndef GTV_LTL_HPP
#define GTV_LTL_HPP

#include <memory>
#include <string>
#include <vector>

#include "gtv/condition.hpp"
#include "gtv/verdict.hpp"

namespace gtv {

/*
  Linear-time formulas over graph-constraint atoms, interpreted on infinite
  state sequences:

      X f   next            G f   always from here on
      f U g until (g must eventually hold)
      f W g weak until:  f U g  or  G f

  Atoms are constraints over the object alphabet plus marking labels (the
  builtin s / e atoms are "some sys node exists" / "some env node exists").
  The tree is immutable and shared.
*/
class LtlFormula {
public:
    enum class Kind { Atom, Not, And, Or, Implies, Next, Globally, Until, WeakUntil };

    static LtlFormula atom(Condition constraint, std::string name);
    static LtlFormula negation(LtlFormula f);
    static LtlFormula conj(LtlFormula a, LtlFormula b);
    static LtlFormula disj(LtlFormula a, LtlFormula b);
    static LtlFormula implies(LtlFormula a, LtlFormula b);
    static LtlFormula next(LtlFormula f);
    static LtlFormula globally(LtlFormula f);
    static LtlFormula until(LtlFormula a, LtlFormula b);
    static LtlFormula weak_until(LtlFormula a, LtlFormula b);

    Kind kind() const;
    const Condition& constraint() const;   // Atom
    const std::string& atom_name() const;  // Atom (for printing)
    const LtlFormula& left() const;        // first / only operand
    const LtlFormula& right() const;       // second operand

    // Number of nested X operators (used to size lasso enumerations).
    int x_depth() const;

    std::string to_string() const;
    bool operator==(const LtlFormula& other) const;

private:
    struct Node;
    explicit LtlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Atom truth table: sat[state][atom] for the formula's atoms in discovery
// (left-to-right) order. Built once per LTS before any path analysis.
struct AtomTable {
    std::vector<const Condition*> atoms; // interned, structural identity
    std::vector<std::string> names;
    std::vector<std::vector<bool>> sat; // [state][atom]
};

AtomTable build_atom_table(const Lts& l, const LtlFormula& f);

// Evaluates f on the ultimately periodic sequence the lasso denotes, by
// position-wise fixpoint over prefix+loop. Exact (no bound involved).
bool eval_ltl_on_lasso(const Lts& l, const Lasso& lasso, const LtlFormula& f);

/*
  Model check: every infinite run of l from every initial state must satisfy
  f. Translates ¬f to a Büchi automaton (tableau construction), builds the
  product with l and searches for an accepting lasso with nested DFS.

  pre: l was completed (every state has a successor); NotCompletedError
  otherwise. On an LTS with complete == false, HOLDS is downgraded to
  UNKNOWN; VIOLATED stands if every witness state lies in the explored
  region and is downgraded to UNKNOWN otherwise.
*/
Verdict ltl_check(const Lts& l, const LtlFormula& f);

} // namespace gtv

#endif
