#ifndef GTV_RULE_HPP
#define GTV_RULE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtv/condition.hpp"
#include "gtv/morphism.hpp"

namespace gtv {

/*
  Plain rule L ⊇ K ⊆ R in span form: the interface K is a graph of its own
  with injective embeddings into the left- and right-hand sides. Elements of
  L outside the K-image are deleted, elements of R outside the K-image are
  created, K-elements are preserved.
*/
struct PlainRule {
    std::string name;
    Graph left;
    Graph interface;
    Graph right;
    std::vector<NodeId> k_left_nodes;  // K node -> L node
    std::vector<EdgeId> k_left_edges;  // K edge -> L edge
    std::vector<NodeId> k_right_nodes; // K node -> R node
    std::vector<EdgeId> k_right_edges; // K edge -> R edge

    bool operator==(const PlainRule&) const = default;
};

// Structural sanity of the span (map sizes, injectivity, labels, endpoints).
bool is_valid_plain_rule(const PlainRule& p);

// Swaps left and right. An involution: invert(invert(p)) == p.
PlainRule invert(const PlainRule& p);

enum class Role { System, Environment, Skip };

const char* role_name(Role r);

/*
  Rule with application condition and role. For rules produced by the joint /
  annotated constructions the left-hand side gains appended tag nodes while
  the application condition keeps its original context, so the invariant is:
  ac's context is a prefix subgraph of `left` (and equals `left` for rules
  authored directly). The provenance fields record where an enriched rule
  came from; they drive display names, trace projection and reporting.
*/
struct Rule {
    PlainRule plain;
    Condition ac;
    Role role;
    std::string base;                      // underlying rule name
    std::optional<std::string> pre_state;  // q   (joint construction)
    std::optional<std::string> post_state; // q'
    std::optional<std::string> pre_marking; // m  (annotated construction)

    Rule(PlainRule plain, Condition ac, Role role);

    // "Move", "Move[q0->q1]" or "Move[q0->q1,top]" depending on provenance.
    std::string display_name() const;

    bool operator==(const Rule&) const = default;
};

// The completion rule Skip := ⟨∅ ⇒ ∅⟩. Operationally a self-loop applied
// exactly at deadlocked states; see complete_lts.
const Rule& skip_rule();

struct TransformationStep {
    std::string rule; // display name
    std::string base;
    Role role;
    int rule_index;  // index into the rule sequence passed to the engine
    int match_index; // index into enumerate_injective_morphisms(L, before)
    Graph before;
    Graph after;
};

// Reason a specific match cannot be applied.
enum class ApplyFailure { None, AcViolated, Dangling };

// Checks m against the rule's application condition and the dangling
// condition without performing the rewrite. Throws MatchInvalidError if m is
// not an injective match of r.plain.left into g.
ApplyFailure why_inapplicable(const Rule& r, const Graph& g, const Morphism& m);

struct ApplyResult {
    Graph result;
    Morphism comatch; // R -> result
};

// Double-pushout rewrite of g at match m. Throws MatchInvalidError /
// ApplicationConditionError / DanglingEdgeError.
ApplyResult apply_at_full(const Rule& r, const Graph& g, const Morphism& m);
Graph apply_at(const Rule& r, const Graph& g, const Morphism& m);

// Every direct transformation of g under the given rules, ordered by rule
// declaration, then by the match enumeration order. One step per applicable
// (rule, match) pair.
std::vector<TransformationStep> direct_transformations(std::span<const Rule> rules,
                                                       const Graph& g);

// True iff no rule in `rules` is applicable to g.
bool is_deadlocked(std::span<const Rule> rules, const Graph& g);

} // namespace gtv

#endif
