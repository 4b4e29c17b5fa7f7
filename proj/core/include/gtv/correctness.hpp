#ifndef GTV_CORRECTNESS_HPP
#define GTV_CORRECTNESS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gtv/condition.hpp"
#include "gtv/ctl.hpp"
#include "gtv/joint.hpp"
#include "gtv/lts.hpp"
#include "gtv/ltl.hpp"
#include "gtv/verdict.hpp"

namespace gtv {

enum class QueryKind { Plain, KStep, LastMinute, WeakKStep };
enum class Method { Direct, Reduction, Both };

const char* query_kind_name(QueryKind k);
const char* method_name(Method m);

/*
  One correctness question about a joint system: is `model`, started from
  the given initial graphs (those satisfying the precondition), correct
  w.r.t. ⟨pre, post⟩ in the requested sense?

  All checks quantify over the supplied initial graphs only; a HOLDS verdict
  certifies exactly that family, not all graphs satisfying the precondition.
*/
struct CorrectnessQuery {
    GtsModel model;
    Condition pre;  // constraint (empty context) over the object alphabet
    Condition post;
    QueryKind kind = QueryKind::KStep;
    int k = 0; // k-step / weak-k-step only
    std::vector<Graph> inits;
    ExplorationLimits limits;
    Method method = Method::Direct;
};

// One decoded counterexample step: the object-level graph after the step
// (tags stripped) plus the rule that produced it. The first entry has no
// rule and carries the initial graph. `tagged` keeps the full state graph
// (with automaton / marking tags) so witnesses can be replayed through the
// rewrite engine.
struct WitnessStep {
    std::string rule; // enriched display name; "" on the first entry
    std::string role; // "init" | "system" | "environment" | "skip"
    Graph graph;      // tag-free graph over the object alphabet
    Graph tagged;     // the state as stored in the transition system
};

struct DecodedWitness {
    std::vector<WitnessStep> steps;
    // index into steps where the lasso loop re-enters; -1 for finite paths
    int loop_start = -1;
};

struct MethodResult {
    std::string method; // "direct" | "ltl-reduction" | "ctl-reduction"
    Verdict verdict;
    int states = 0; // size of the state space this method explored
    bool complete = false;
    std::optional<DecodedWitness> witness;
};

struct CorrectnessReport {
    QueryKind kind = QueryKind::KStep;
    int k = 0;
    Verdict verdict; // overall (the direct method's when both ran)
    std::vector<MethodResult> methods;
    // method = both: true when the definite verdicts agree; disagreement of
    // two definite verdicts is a defect in the engine, never in the model
    std::optional<bool> agreement;
    bool defect = false;
    std::optional<DecodedWitness> witness;
    int states = 0;
    bool complete = false;
};

/*
  Plain correctness of a rule set: from every initial graph satisfying c,
  every strictly derived graph satisfies d. Exploration is not completed
  (no skip steps); truncation downgrades HOLDS to UNKNOWN.
*/
Verdict check_system_correct(const std::vector<Rule>& rules, const Condition& c,
                             const Condition& d, const std::vector<Graph>& inits,
                             const ExplorationLimits& limits);

// kind = plain: plain correctness of the full joint system.
CorrectnessReport check_plain(const CorrectnessQuery& q);

/*
  kind = k-step: (S) the enriched system-rule GTS is correct w.r.t. ⟨c,d⟩,
  and (R^k) after every environment step, every path of length k in the
  completed joint system passes a d-state within k steps. Skip steps count
  toward k.
*/
CorrectnessReport check_k_step(const CorrectnessQuery& q);

/*
  kind = last-minute: (S) as above, and (R') every state with an incoming
  system transition and an outgoing environment transition satisfies d.
  use_r_prime = false checks the original condition (R) instead — every
  state reached from an environment successor by one or more system steps
  and owning an outgoing environment transition satisfies d; the verdicts
  provably coincide.
*/
CorrectnessReport check_last_minute(const CorrectnessQuery& q, bool use_r_prime = true);

/*
  kind = weak-k-step: (S) as above, and (R^k_w) after every environment
  step some state satisfying d is reachable within k steps (in the plain
  joint system; skip steps would add nothing to an existential bound).
*/
CorrectnessReport check_weak_k_step(const CorrectnessQuery& q);

/*
  The temporal encodings over the annotated joint system:

      PCS    = c ⇒ X((s ∧ d) W e)          system correctness
      kSC    = c ⇒ XG(e ⇒ ∨_{j=0..k} X^j d)   k-step recovery
      GR     = c ⇒ G((s ∧ Xe) ⇒ d)          last-minute recovery
      PCSctl = c ⇒ AX((s ∧ d) AW e)
      kWC    = c ⇒ AX AG(e ⇒ ∨_{j=0..k} EX^j d)

  with s = ∃(sys tag), e = ∃(env tag). X^0 / EX^0 are empty operators, and
  a one-element disjunction collapses to its element, so k = 0 yields the
  bare postcondition inside the recovery conjunct.

  build_ltl_formula: kind = k-step → PCS ∧ kSC; last-minute → PCS ∧ GR.
  build_ctl_formula: kind = weak-k-step → PCSctl ∧ kWC.
*/
LtlFormula build_ltl_formula(QueryKind kind, const Condition& c, const Condition& d,
                             int k);
CtlFormula build_ctl_formula(QueryKind kind, const Condition& c, const Condition& d,
                             int k);

/*
  method = reduction: explore the annotated joint system from ⟨G, q0, ⊤⟩,
  complete it, and model-check the matching temporal formula. Valid for
  kinds k-step, last-minute (LTL) and weak-k-step (CTL).
*/
CorrectnessReport check_via_reduction(const CorrectnessQuery& q);

// Dispatch on q.kind and q.method; method = both runs direct and reduction
// and fills agreement / defect.
CorrectnessReport check_query(const CorrectnessQuery& q);

/*
  Decode a counterexample (state indices into `l`) into object-level graphs
  and rule names: markings and automaton tags are stripped, transitions are
  resolved to the rules that produced them.
*/
DecodedWitness decode_witness(const Lts& l, const Verdict& v,
                              const RegulationAutomaton& a);

} // namespace gtv

#endif
