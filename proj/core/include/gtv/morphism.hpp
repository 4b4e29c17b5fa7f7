#ifndef GTV_MORPHISM_HPP
#define GTV_MORPHISM_HPP

#include <vector>

#include "gtv/graph.hpp"

namespace gtv {

/*
  Graph morphism: node and edge maps from a domain graph into a codomain
  graph. Both graphs are held by value so a morphism stays self-contained;
  graphs are small enough that copying is a non-issue at the scales this
  engine targets.

  Only label- and structure-preserving maps are considered morphisms; the
  engine works with injective ones throughout (matches, condition extensions).
*/
struct Morphism {
    Graph domain;
    Graph codomain;
    std::vector<NodeId> node_map; // size = domain.node_count()
    std::vector<EdgeId> edge_map; // size = domain.edge_count()

    bool operator==(const Morphism&) const = default;
};

// Identity morphism on g.
Morphism identity_morphism(const Graph& g);

// Structure and label preservation: every domain edge maps to a codomain edge
// with the same label whose endpoints are the images of the domain endpoints.
bool is_structure_preserving(const Morphism& m);

// Injectivity on nodes and on edges.
bool is_injective(const Morphism& m);

// Well-formedness: map sizes match the domain, images lie in the codomain,
// and the map preserves structure and labels.
bool is_valid_morphism(const Morphism& m);

// Composition g∘f (f: A -> B, g: B -> C). Domains must line up exactly.
Morphism compose(const Morphism& f, const Morphism& g);

// Restriction of m to a prefix of its domain: the subgraph formed by the
// first `nodes` nodes and first `edges` edges (which must be closed, i.e.
// those edges only touch the prefix nodes).
Morphism restrict_to_prefix(const Morphism& m, int nodes, int edges);

} // namespace gtv

#endif
