#ifndef GTV_CTL_HPP
#define GTV_CTL_HPP

#include <memory>
#include <string>
#include <vector>

#include "gtv/condition.hpp"
#include "gtv/verdict.hpp"

namespace gtv {

/*
  Branching-time formulas over graph-constraint atoms. Path quantification
  ranges over the infinite runs of a completed LTS:

      AX/EX   all / some successors
      AG/EG   all / some runs stay in f
      A/E (f U g), A/E (f W g)   until and weak until along all / some runs
*/
class CtlFormula {
public:
    enum class Kind { Atom, Not, And, Or, Implies, AX, EX, AG, EG, AU, EU, AW, EW };

    static CtlFormula atom(Condition constraint, std::string name);
    static CtlFormula negation(CtlFormula f);
    static CtlFormula conj(CtlFormula a, CtlFormula b);
    static CtlFormula disj(CtlFormula a, CtlFormula b);
    static CtlFormula implies(CtlFormula a, CtlFormula b);
    static CtlFormula ax(CtlFormula f);
    static CtlFormula ex(CtlFormula f);
    static CtlFormula ag(CtlFormula f);
    static CtlFormula eg(CtlFormula f);
    static CtlFormula au(CtlFormula a, CtlFormula b);
    static CtlFormula eu(CtlFormula a, CtlFormula b);
    static CtlFormula aw(CtlFormula a, CtlFormula b);
    static CtlFormula ew(CtlFormula a, CtlFormula b);

    Kind kind() const;
    const Condition& constraint() const;
    const std::string& atom_name() const;
    const CtlFormula& left() const;
    const CtlFormula& right() const;

    std::string to_string() const;
    bool operator==(const CtlFormula& other) const;

private:
    struct Node;
    explicit CtlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/*
  Global model check by bottom-up fixpoint labeling (EX / EU / EG as the
  basis, every other operator by duality or expansion). HOLDS iff every
  initial state is labeled with the formula.

  pre: every state has a successor (NotCompletedError otherwise). Truncated
  explorations downgrade HOLDS to UNKNOWN; VIOLATED stands if the extracted
  evidence stays in the explored region. The witness is best-effort evidence
  for the outermost failing obligation: a finite path, or a lasso when the
  failure is an EG-style cycle.
*/
Verdict ctl_check(const Lts& l, const CtlFormula& f);

/*
  Reference evaluator used as an oracle: recursive descent where each
  operator quantifies over paths explicitly (BFS reachability for EU/AG,
  cycle search for EG, all-paths DFS with on-path cycle detection for
  AU/AW). Independent of the labeling algorithm above. Only for small LTSs:
  throws OracleTooLargeError beyond 200 states.
*/
bool eval_ctl_naive(const Lts& l, int state, const CtlFormula& f);

} // namespace gtv

#endif
