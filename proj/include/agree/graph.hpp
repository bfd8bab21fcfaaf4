#pragma once

// Finite graphs, their typed and polarized decorations, and morphisms.
//
// A single Object type carries the data of all three supported categories:
// plain graphs (Gr), graphs typed over a fixed type graph (Gr/Type) and
// polarized graphs (Grpol). The CategoryInstance in use decides which
// decoration is meaningful; the others stay empty.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace agree {

using NodeId = std::string;
using EdgeId = std::string;
using NodeMap = std::map<NodeId, NodeId>;
using EdgeMap = std::map<EdgeId, EdgeId>;

struct Endpoints {
  NodeId src;
  NodeId tgt;

  auto operator<=>(const Endpoints&) const = default;
};

/// Directed multigraph with opaque string ids. Loops and parallel edges are
/// allowed; node and edge ids live in separate namespaces.
class Graph {
 public:
  /// Throws StructuralError on a duplicate id.
  void add_node(NodeId id);
  /// Throws StructuralError on a duplicate id or a dangling endpoint.
  void add_edge(EdgeId id, NodeId src, NodeId tgt);

  bool has_node(const NodeId& id) const { return nodes_.contains(id); }
  bool has_edge(const EdgeId& id) const { return edges_.contains(id); }

  const std::set<NodeId>& nodes() const noexcept { return nodes_; }
  const std::map<EdgeId, Endpoints>& edges() const noexcept { return edges_; }

  const Endpoints& ends(const EdgeId& e) const;
  const NodeId& src(const EdgeId& e) const { return ends(e).src; }
  const NodeId& tgt(const EdgeId& e) const { return ends(e).tgt; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Number of items (nodes plus edges).
  std::size_t size() const noexcept { return nodes_.size() + edges_.size(); }
  bool empty() const noexcept { return nodes_.empty() && edges_.empty(); }

  bool operator==(const Graph&) const = default;

 private:
  std::set<NodeId> nodes_;
  std::map<EdgeId, Endpoints> edges_;
};

/// Typing morphism into the type graph of a TYPED instance.
struct Typing {
  NodeMap nodes;
  EdgeMap edges;

  bool operator==(const Typing&) const = default;
};

struct Polarity {
  std::set<NodeId> plus;
  std::set<NodeId> minus;

  bool operator==(const Polarity&) const = default;
};

struct Object {
  Graph graph;
  Typing typing;
  Polarity polarity;

  bool operator==(const Object&) const = default;

  const NodeId& node_type(const NodeId& n) const;
  const EdgeId& edge_type(const EdgeId& e) const;
  bool is_plus(const NodeId& n) const { return polarity.plus.contains(n); }
  bool is_minus(const NodeId& n) const { return polarity.minus.contains(n); }
};

/// Objects are shared immutably once constructed.
using ObjectRef = std::shared_ptr<const Object>;

ObjectRef make_object(Object object);
ObjectRef make_object(Graph graph);

enum class Kind { Gr, Typed, GrPol };

/// Which category the objects live in, and therefore which stable class of
/// monos is used for matches and embeddings: all monos for Gr and Gr/Type,
/// strict monos for Grpol.
class CategoryInstance {
 public:
  static CategoryInstance gr();
  static CategoryInstance typed(Graph typegraph);
  static CategoryInstance grpol();
  /// Sets, represented as graphs typed over one node and no edges.
  static CategoryInstance set();

  Kind kind() const noexcept { return kind_; }
  bool is_typed() const noexcept { return kind_ == Kind::Typed; }
  bool is_polarized() const noexcept { return kind_ == Kind::GrPol; }
  /// Throws UsageError unless the instance is TYPED.
  const Graph& typegraph() const;
  /// "gr", "typed" or "pol".
  std::string name() const;
  bool uses_strict_monos() const noexcept { return kind_ == Kind::GrPol; }

  bool operator==(const CategoryInstance& other) const;

 private:
  CategoryInstance(Kind kind, std::shared_ptr<const Graph> typegraph)
      : kind_(kind), typegraph_(std::move(typegraph)) {}

  Kind kind_;
  std::shared_ptr<const Graph> typegraph_;
};

/// Pair of maps between two objects. Construction does not check anything;
/// validate_morphism reports dangling entries, partiality and broken
/// homomorphism or decoration obligations.
class Morphism {
 public:
  Morphism(ObjectRef source, ObjectRef target, NodeMap nodes, EdgeMap edges);

  const Object& source() const noexcept { return *source_; }
  const Object& target() const noexcept { return *target_; }
  const ObjectRef& source_ref() const noexcept { return source_; }
  const ObjectRef& target_ref() const noexcept { return target_; }

  const NodeId& node(const NodeId& x) const;
  const EdgeId& edge(const EdgeId& e) const;
  const NodeMap& node_map() const noexcept { return nodes_; }
  const EdgeMap& edge_map() const noexcept { return edges_; }

  bool injective() const;
  bool bijective() const;

  /// Equal maps between structurally equal objects.
  bool operator==(const Morphism& other) const;

 private:
  ObjectRef source_;
  ObjectRef target_;
  NodeMap nodes_;
  EdgeMap edges_;
};

bool same_object(const ObjectRef& a, const ObjectRef& b);

Morphism identity(ObjectRef x);
/// g after f. Throws UsageError when f's target is not g's source.
Morphism compose(const Morphism& g, const Morphism& f);
/// Throws PreconditionError if f is not bijective.
Morphism inverse(const Morphism& f);

struct MorphismReport {
  bool valid = false;
  bool is_mono_in_M = false;
  bool is_iso = false;
  /// Set when a map entry refers to an id outside source or target.
  std::optional<std::string> structural_error;
  std::vector<std::string> violations;
};

/// Problems with an object as a member of the instance; empty when valid.
std::vector<std::string> object_violations(const Object& x,
                                           const CategoryInstance& inst);
/// Throws PreconditionError listing object_violations.
void require_object(const Object& x, const CategoryInstance& inst);

MorphismReport validate_morphism(const Morphism& f,
                                 const CategoryInstance& inst);
/// Throws PreconditionError unless f is a valid morphism of the instance.
void require_morphism(const Morphism& f, const CategoryInstance& inst,
                      const char* what);

/// Homomorphism and decoration obligations only; assumes totality.
bool is_homomorphism(const Morphism& f, const CategoryInstance& inst);
bool in_mono_class(const Morphism& f, const CategoryInstance& inst);
/// f(N+_X) = f(N_X) ∩ N+_Y and likewise for N-.
bool is_strict(const Morphism& f);

// Polarity functors U, Pol and Pol± relating Grpol and Gr.

Object pol_forget(const Object& x);
Object pol_induce(const Graph& x);
Object pol_minimal(const Graph& x);
/// U(f): same maps between the underlying graphs.
Morphism pol_forget(const Morphism& f);
/// Pol(f): same maps between the induced polarized graphs.
Morphism pol_induce(const Morphism& f);
/// Unit u_X: X -> Pol(U(X)) of U ⊣ Pol, the identity on items.
Morphism relax_polarity(const ObjectRef& x);

/// Compact single-line rendering used in diagnostics.
std::string describe(const Object& x);
std::string describe(const Morphism& f);

}  // namespace agree
