#pragma once

// Partial map classifiers (T, η) for the three supported categories.
//
//   Gr:      T(Y) = Y + node "*" + one edge "*(n,p)" for every pair
//            (n,p) of nodes of Y + {*}.
//   Gr/Type: T(Y) = Y + one node "*:τ" per type node τ + one edge
//            "*(n,p):ε" per pair of nodes and per edge type ε compatible
//            with the pair.
//   Grpol:   T(Y) = Y + node "*" in N+ and N- + one edge "*(n,p)" for
//            every (n,p) in (N+ + {*}) x (N- + {*}).
//
// If an id of Y already clashes with a star id, the star id is primed
// ("*'", "*''", ...) until fresh.

#include <map>
#include <set>
#include <string>
#include <tuple>

#include "agree/cat_ops.hpp"
#include "agree/graph.hpp"

namespace agree {

struct ClassifiedObject {
  ObjectRef base;
  ObjectRef total;
  Morphism unit;  // η_Y : Y -> T(Y)
  std::set<NodeId> star_nodes;
  std::set<EdgeId> star_edges;

  /// Star node for a type node (ignored outside Gr/Type).
  const NodeId& star_node(const NodeId& type = {}) const;
  /// Star edge from `src` to `tgt` (nodes of T(Y)) of the given edge type.
  const EdgeId& star_edge(const NodeId& src, const NodeId& tgt,
                          const EdgeId& type = {}) const;

  std::map<NodeId, NodeId> star_node_index;
  std::map<std::tuple<NodeId, NodeId, EdgeId>, EdgeId> star_edge_index;
};

ClassifiedObject t_object(const ObjectRef& y, const CategoryInstance& inst);

/// T(f): T(X) -> T(Y). Items of X go along f, star items along f extended by
/// * ↦ *.
Morphism t_morphism(const Morphism& f, const CategoryInstance& inst);
Morphism t_morphism(const Morphism& f, const ClassifiedObject& tx,
                    const ClassifiedObject& ty);

/// φ(m,f): Z -> T(Y) classifying the partial map (m: X ↪ Z, f: X -> Y).
/// Throws PreconditionError when m is not in the mono class.
Morphism phi(const Morphism& m, const Morphism& f, const CategoryInstance& inst);
Morphism phi(const Morphism& m, const Morphism& f, const ClassifiedObject& ty,
             const CategoryInstance& inst);

/// m̄ = φ(m, id).
Morphism bar(const Morphism& m, const CategoryInstance& inst);

struct Characteristic {
  Morphism chi;       // G -> T(1)
  Morphism true_pt;   // η_1
  Morphism false_pt;  // T(¡) ∘ (!_{T(0)})^-1
};

Characteristic characteristic(const Morphism& m, const CategoryInstance& inst);

/// The pair (true, false) of points of T(1) alone.
std::pair<Morphism, Morphism> truth_values(const CategoryInstance& inst);

}  // namespace agree
