#ifndef GTV_MATCH_HPP
#define GTV_MATCH_HPP

#include <optional>
#include <vector>

#include "gtv/morphism.hpp"

namespace gtv {

// Partial assignment used when extending a morphism along a condition
// nesting: node/edge slots fixed to a codomain image, -1 for free slots.
struct PartialAssignment {
    std::vector<NodeId> nodes; // size = pattern.node_count(), -1 = free
    std::vector<EdgeId> edges; // size = pattern.edge_count(), -1 = free
};

/*
  Enumerates every injective, label- and structure-preserving morphism from
  `pattern` into `host`. The result is deterministic: morphisms are sorted
  lexicographically by their node map and then their edge map, so equal inputs
  always produce the same list in the same order.

  The optional pre-assignment pins chosen pattern elements to fixed host
  images (used for condition extensions, where the context's embedding is
  already determined). Pinned images participate in the injectivity check.
*/
std::vector<Morphism> enumerate_injective_morphisms(
    const Graph& pattern, const Graph& host,
    const std::optional<PartialAssignment>& pre = std::nullopt);

// True iff at least one injective morphism pattern -> host exists. Same
// search as above but stops at the first hit.
bool has_injective_morphism(
    const Graph& pattern, const Graph& host,
    const std::optional<PartialAssignment>& pre = std::nullopt);

} // namespace gtv

#endif
