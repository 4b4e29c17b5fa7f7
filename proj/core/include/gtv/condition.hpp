#ifndef GTV_CONDITION_HPP
#define GTV_CONDITION_HPP

#include <memory>
#include <vector>

#include "gtv/morphism.hpp"

namespace gtv {

/*
  Nested graph condition over a context graph P:

      true            satisfied by every morphism from P
      exists(a, c')   a: P -> C injective extension; satisfied by p: P -> G
                      iff some injective q: C -> G with q∘a = p satisfies c'
      not c, and(cs)  the usual Boolean combinations

  or / implies / forall / false are derived sugar that construct the core
  forms, so the tree only ever holds the four kinds above. Conditions over
  the empty context act as graph constraints via graph_satisfies.

  The tree is immutable and shared; copying a Condition is cheap.
*/
class Condition {
public:
    enum class Kind { True, Exists, Not, And };

    static Condition truth(Graph context);
    // not(true) over the same context
    static Condition falsity(Graph context);
    // extension must be injective and valid; nested condition's context must
    // equal extension.codomain
    static Condition exists(Morphism extension, Condition nested);
    static Condition exists(Morphism extension);
    static Condition negate(Condition c);
    // children must share one context (= `context`); And() of zero children
    // is true
    static Condition conj(Graph context, std::vector<Condition> children);

    // sugar
    static Condition disj(Graph context, std::vector<Condition> children);
    static Condition implies(Condition antecedent, Condition consequent);
    static Condition forall(Morphism extension, Condition nested);

    Kind kind() const;
    const Graph& context() const;
    // Exists accessors
    const Morphism& extension() const;
    const Condition& nested() const;
    // Not accessor
    const Condition& child() const;
    // And accessor
    const std::vector<Condition>& children() const;

    bool operator==(const Condition& other) const;

private:
    struct Node;
    explicit Condition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Satisfaction of c (over P) by an injective morphism p: P -> G. Throws
// ContextMismatchError if p.domain differs from c's context.
bool morphism_satisfies(const Morphism& p, const Condition& c);

// Constraint satisfaction: c must be over the empty graph; checks the unique
// empty morphism into g.
bool graph_satisfies(const Graph& g, const Condition& c);

} // namespace gtv

#endif
