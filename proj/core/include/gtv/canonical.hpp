#ifndef GTV_CANONICAL_HPP
#define GTV_CANONICAL_HPP

#include <string>

#include "gtv/graph.hpp"

namespace gtv {

/*
  Canonical form of a labeled directed multigraph: a relabeling of the node
  ids (and a sorting of the edge list) such that isomorphic graphs map to the
  exact same value. `key` is a compact byte-string serialization of the
  canonical graph, suitable as a hash-map key for isomorphism classes:

      canonical_key(g) == canonical_key(h)  iff  g and h are isomorphic.

  Computed by iterative color refinement over (label, incident edge profile)
  followed by a backtracking individualization step that tries every member
  of the first ambiguous color class and keeps the lexicographically smallest
  certificate. The search explores a whole automorphism orbit per level, so
  the minimum is independent of the input node order.
*/
struct CanonicalForm {
    Graph graph;
    std::string key;
};

CanonicalForm canonical_form(const Graph& g);
std::string canonical_key(const Graph& g);

} // namespace gtv

#endif
