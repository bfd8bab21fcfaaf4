#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agree/graph.hpp"

namespace agree {

/// Canonical id of a pair item: "(x,y)".
std::string pair_id(const std::string& x, const std::string& y);

/// Canonical pullback P of the cospan X -f-> Z <-g- Y with its projections.
/// Nodes of P are the pairs (x,y) with f(x) = g(y), edges likewise.
struct Pullback {
  Morphism f;
  Morphism g;
  ObjectRef object;
  Morphism p1;  // P -> X
  Morphism p2;  // P -> Y

  /// Id of the pair node; throws PreconditionError when (x,y) is not in P.
  const NodeId& node_of(const NodeId& x, const NodeId& y) const;
  const EdgeId& edge_of(const EdgeId& x, const EdgeId& y) const;

  std::map<std::pair<NodeId, NodeId>, NodeId> node_index;
  std::map<std::pair<EdgeId, EdgeId>, EdgeId> edge_index;
};

/// Throws UsageError on a mismatched cospan. In Grpol a pair is in N+ (N-)
/// iff both components are; in Gr/Type the pair inherits the type of x.
Pullback pullback(const Morphism& f, const Morphism& g,
                  const CategoryInstance& inst);

/// Unique z: W -> P with p1∘z = v and p2∘z = w, i.e. z(x) = (v(x), w(x)).
/// Throws PreconditionError when f∘v ≠ g∘w.
Morphism pullback_mediator(const Pullback& pb, const Morphism& v,
                           const Morphism& w);

/// Pushout of D <-n- K -r-> R for n in the mono class. Items of D outside
/// n(K) are renamed "D:x", items of R "R:y".
struct Pushout {
  ObjectRef object;
  Morphism h;  // D -> H
  Morphism p;  // R -> H
};

/// Only for Gr and Gr/Type; throws PreconditionError when n is not a mono in
/// the class and UsageError for Grpol.
Pushout pushout_along_mono(const Morphism& n, const Morphism& r,
                           const CategoryInstance& inst);

struct Constants {
  ObjectRef final_object;
  ObjectRef initial_object;
  bool bang_is_in_M = false;
};

/// Gr: 1 is one node "1" with one loop "1". Gr/Type: 1 is the type graph
/// typed by the identity. Grpol: like Gr with the node in N+ and N-. 0 is
/// empty everywhere.
Constants constants(const CategoryInstance& inst);
/// Unique arrow X -> 1.
Morphism bang(const ObjectRef& x, const CategoryInstance& inst);
/// Unique arrow 0 -> X.
Morphism zero(const ObjectRef& x, const CategoryInstance& inst);

/// Square with corners A (top left), B, C, D:
///
///     A --top--> B
///     |          |
///   left       right
///     v          v
///     C -bottom> D
struct Square {
  Morphism top;
  Morphism left;
  Morphism right;
  Morphism bottom;
};

bool commutes(const Square& sq);
/// True iff the mediator from A into the canonical pullback of
/// (right, bottom) is an iso. Throws PreconditionError if sq does not commute.
bool is_pullback_square(const Square& sq, const CategoryInstance& inst);

// Morphism enumeration ------------------------------------------------------

struct SearchOptions {
  bool injective = false;
  /// Restrict to the instance's mono class (implies injective).
  bool mono_in_M = false;
  /// Extra per-item admissibility, applied before structural checks.
  std::function<bool(const NodeId&, const NodeId&)> node_filter;
  std::function<bool(const EdgeId&, const EdgeId&)> edge_filter;
};

/// Calls visit for every instance-valid morphism X -> Y satisfying options,
/// in lexicographic order of (source id, target id) assignments. Stops when
/// visit returns false.
void for_each_morphism(const ObjectRef& x, const ObjectRef& y,
                       const CategoryInstance& inst,
                       const SearchOptions& options,
                       const std::function<bool(const Morphism&)>& visit);

std::vector<Morphism> all_morphisms(const ObjectRef& x, const ObjectRef& y,
                                    const CategoryInstance& inst,
                                    const SearchOptions& options = {});

/// Counts morphisms, stopping once `limit` is reached.
std::size_t count_morphisms(const ObjectRef& x, const ObjectRef& y,
                            const CategoryInstance& inst,
                            const SearchOptions& options, std::size_t limit);

/// Some instance-valid isomorphism X -> Y, or nullopt.
std::optional<Morphism> iso_search(const ObjectRef& x, const ObjectRef& y,
                                   const CategoryInstance& inst);

/// Iso u: X -> Y with fy∘u = fx, for fx: X -> B and fy: Y -> B.
std::optional<Morphism> iso_over(const Morphism& fx, const Morphism& fy,
                                 const CategoryInstance& inst);

}  // namespace agree
