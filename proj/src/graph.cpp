#include "agree/graph.hpp"

#include <sstream>

#include "agree/error.hpp"

namespace agree {

void Graph::add_node(NodeId id) {
  if (!nodes_.insert(id).second) {
    throw StructuralError("duplicate id: node '" + id + "'");
  }
}

void Graph::add_edge(EdgeId id, NodeId src, NodeId tgt) {
  if (edges_.contains(id)) {
    throw StructuralError("duplicate id: edge '" + id + "'");
  }
  if (!nodes_.contains(src)) {
    throw StructuralError("dangling endpoint: edge '" + id + "' source '" +
                          src + "'");
  }
  if (!nodes_.contains(tgt)) {
    throw StructuralError("dangling endpoint: edge '" + id + "' target '" +
                          tgt + "'");
  }
  edges_.emplace(std::move(id), Endpoints{std::move(src), std::move(tgt)});
}

const Endpoints& Graph::ends(const EdgeId& e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw StructuralError("unknown id: edge '" + e + "'");
  return it->second;
}

const NodeId& Object::node_type(const NodeId& n) const {
  auto it = typing.nodes.find(n);
  if (it == typing.nodes.end()) {
    throw StructuralError("node '" + n + "' has no type");
  }
  return it->second;
}

const EdgeId& Object::edge_type(const EdgeId& e) const {
  auto it = typing.edges.find(e);
  if (it == typing.edges.end()) {
    throw StructuralError("edge '" + e + "' has no type");
  }
  return it->second;
}

ObjectRef make_object(Object object) {
  return std::make_shared<const Object>(std::move(object));
}

ObjectRef make_object(Graph graph) {
  return make_object(Object{std::move(graph), {}, {}});
}

// ---------------------------------------------------------------------------
// CategoryInstance

CategoryInstance CategoryInstance::gr() { return {Kind::Gr, nullptr}; }

CategoryInstance CategoryInstance::typed(Graph typegraph) {
  return {Kind::Typed, std::make_shared<const Graph>(std::move(typegraph))};
}

CategoryInstance CategoryInstance::grpol() { return {Kind::GrPol, nullptr}; }

CategoryInstance CategoryInstance::set() {
  Graph one;
  one.add_node("elt");
  return typed(std::move(one));
}

const Graph& CategoryInstance::typegraph() const {
  if (kind_ != Kind::Typed) {
    throw UsageError("instance '" + name() + "' has no type graph");
  }
  return *typegraph_;
}

std::string CategoryInstance::name() const {
  switch (kind_) {
    case Kind::Gr:
      return "gr";
    case Kind::Typed:
      return "typed";
    case Kind::GrPol:
      return "pol";
  }
  return "?";
}

bool CategoryInstance::operator==(const CategoryInstance& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ != Kind::Typed) return true;
  return typegraph_ == other.typegraph_ || *typegraph_ == *other.typegraph_;
}

// ---------------------------------------------------------------------------
// Morphism

Morphism::Morphism(ObjectRef source, ObjectRef target, NodeMap nodes,
                   EdgeMap edges)
    : source_(std::move(source)),
      target_(std::move(target)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {
  if (!source_ || !target_) throw UsageError("morphism without source/target");
}

const NodeId& Morphism::node(const NodeId& x) const {
  auto it = nodes_.find(x);
  if (it == nodes_.end()) {
    throw StructuralError("morphism undefined on node '" + x + "'");
  }
  return it->second;
}

const EdgeId& Morphism::edge(const EdgeId& e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) {
    throw StructuralError("morphism undefined on edge '" + e + "'");
  }
  return it->second;
}

namespace {

template <typename Map>
bool map_injective(const Map& m) {
  std::set<typename Map::mapped_type> seen;
  for (const auto& [k, v] : m) {
    if (!seen.insert(v).second) return false;
  }
  return true;
}

}  // namespace

bool Morphism::injective() const {
  return map_injective(nodes_) && map_injective(edges_);
}

bool Morphism::bijective() const {
  return injective() && nodes_.size() == target_->graph.node_count() &&
         edges_.size() == target_->graph.edge_count();
}

bool same_object(const ObjectRef& a, const ObjectRef& b) {
  return a == b || *a == *b;
}

bool Morphism::operator==(const Morphism& other) const {
  return nodes_ == other.nodes_ && edges_ == other.edges_ &&
         same_object(source_, other.source_) &&
         same_object(target_, other.target_);
}

Morphism identity(ObjectRef x) {
  NodeMap nodes;
  EdgeMap edges;
  for (const auto& n : x->graph.nodes()) nodes.emplace(n, n);
  for (const auto& [e, ends] : x->graph.edges()) edges.emplace(e, e);
  return Morphism(x, x, std::move(nodes), std::move(edges));
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!same_object(f.target_ref(), g.source_ref())) {
    throw UsageError("cannot compose: target of " + describe(f) +
                     " is not the source of " + describe(g));
  }
  NodeMap nodes;
  EdgeMap edges;
  for (const auto& [x, y] : f.node_map()) nodes.emplace(x, g.node(y));
  for (const auto& [x, y] : f.edge_map()) edges.emplace(x, g.edge(y));
  return Morphism(f.source_ref(), g.target_ref(), std::move(nodes),
                  std::move(edges));
}

Morphism inverse(const Morphism& f) {
  if (!f.bijective()) throw PreconditionError("inverse of a non-bijection");
  NodeMap nodes;
  EdgeMap edges;
  for (const auto& [x, y] : f.node_map()) nodes.emplace(y, x);
  for (const auto& [x, y] : f.edge_map()) edges.emplace(y, x);
  return Morphism(f.target_ref(), f.source_ref(), std::move(nodes),
                  std::move(edges));
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> object_violations(const Object& x,
                                           const CategoryInstance& inst) {
  std::vector<std::string> out;
  const Graph& g = x.graph;
  if (inst.is_typed()) {
    const Graph& type = inst.typegraph();
    for (const auto& n : g.nodes()) {
      auto it = x.typing.nodes.find(n);
      if (it == x.typing.nodes.end()) {
        out.push_back("node '" + n + "' has no type");
      } else if (!type.has_node(it->second)) {
        out.push_back("node '" + n + "' has unknown type '" + it->second + "'");
      }
    }
    for (const auto& [e, ends] : g.edges()) {
      auto it = x.typing.edges.find(e);
      if (it == x.typing.edges.end()) {
        out.push_back("edge '" + e + "' has no type");
        continue;
      }
      if (!type.has_edge(it->second)) {
        out.push_back("edge '" + e + "' has unknown type '" + it->second + "'");
        continue;
      }
      const Endpoints& tends = type.ends(it->second);
      auto s = x.typing.nodes.find(ends.src);
      auto t = x.typing.nodes.find(ends.tgt);
      if (s == x.typing.nodes.end() || t == x.typing.nodes.end()) continue;
      if (s->second != tends.src || t->second != tends.tgt) {
        out.push_back("edge '" + e + "' of type '" + it->second +
                      "' joins nodes of incompatible types");
      }
    }
    if (x.typing.nodes.size() != g.node_count() ||
        x.typing.edges.size() != g.edge_count()) {
      out.push_back("typing mentions unknown items");
    }
  } else if (!x.typing.nodes.empty() || !x.typing.edges.empty()) {
    out.push_back("typing given in untyped instance '" + inst.name() + "'");
  }

  if (inst.is_polarized()) {
    for (const auto& n : x.polarity.plus) {
      if (!g.has_node(n)) out.push_back("polarity mentions unknown node '" + n + "'");
    }
    for (const auto& n : x.polarity.minus) {
      if (!g.has_node(n)) out.push_back("polarity mentions unknown node '" + n + "'");
    }
    for (const auto& [e, ends] : g.edges()) {
      if (!x.is_plus(ends.src)) {
        out.push_back("edge '" + e + "' leaves node '" + ends.src +
                      "' which is not in N+");
      }
      if (!x.is_minus(ends.tgt)) {
        out.push_back("edge '" + e + "' enters node '" + ends.tgt +
                      "' which is not in N-");
      }
    }
  } else if (!x.polarity.plus.empty() || !x.polarity.minus.empty()) {
    out.push_back("polarity given in unpolarized instance '" + inst.name() + "'");
  }
  return out;
}

void require_object(const Object& x, const CategoryInstance& inst) {
  auto issues = object_violations(x, inst);
  if (issues.empty()) return;
  std::string msg = "invalid object in instance '" + inst.name() + "':";
  for (const auto& i : issues) msg += "\n  " + i;
  throw PreconditionError(msg);
}

bool is_homomorphism(const Morphism& f, const CategoryInstance& inst) {
  const Object& x = f.source();
  const Object& y = f.target();
  for (const auto& [e, ends] : x.graph.edges()) {
    const Endpoints& image = y.graph.ends(f.edge(e));
    if (image.src != f.node(ends.src) || image.tgt != f.node(ends.tgt)) {
      return false;
    }
  }
  if (inst.is_typed()) {
    for (const auto& n : x.graph.nodes()) {
      if (y.node_type(f.node(n)) != x.node_type(n)) return false;
    }
    for (const auto& [e, ends] : x.graph.edges()) {
      if (y.edge_type(f.edge(e)) != x.edge_type(e)) return false;
    }
  }
  if (inst.is_polarized()) {
    for (const auto& n : x.polarity.plus) {
      if (!y.is_plus(f.node(n))) return false;
    }
    for (const auto& n : x.polarity.minus) {
      if (!y.is_minus(f.node(n))) return false;
    }
  }
  return true;
}

bool is_strict(const Morphism& f) {
  std::set<NodeId> image_plus;
  std::set<NodeId> image_minus;
  for (const auto& n : f.source().polarity.plus) image_plus.insert(f.node(n));
  for (const auto& n : f.source().polarity.minus) image_minus.insert(f.node(n));
  for (const auto& [x, y] : f.node_map()) {
    if (f.target().is_plus(y) && !image_plus.contains(y)) return false;
    if (f.target().is_minus(y) && !image_minus.contains(y)) return false;
  }
  return true;
}

bool in_mono_class(const Morphism& f, const CategoryInstance& inst) {
  if (!f.injective()) return false;
  return !inst.uses_strict_monos() || is_strict(f);
}

MorphismReport validate_morphism(const Morphism& f,
                                 const CategoryInstance& inst) {
  MorphismReport report;
  const Graph& xs = f.source().graph;
  const Graph& ys = f.target().graph;

  for (const auto& [x, y] : f.node_map()) {
    if (!xs.has_node(x)) {
      report.structural_error = "dangling map entry: node '" + x + "' is not in the source";
    } else if (!ys.has_node(y)) {
      report.structural_error = "dangling map entry: node '" + x + "' maps to '" + y +
                                "' which is not in the target";
    }
    if (report.structural_error) return report;
  }
  for (const auto& [x, y] : f.edge_map()) {
    if (!xs.has_edge(x)) {
      report.structural_error = "dangling map entry: edge '" + x + "' is not in the source";
    } else if (!ys.has_edge(y)) {
      report.structural_error = "dangling map entry: edge '" + x + "' maps to '" + y +
                                "' which is not in the target";
    }
    if (report.structural_error) return report;
  }

  for (const auto& issue : object_violations(f.source(), inst)) {
    report.violations.push_back("source: " + issue);
  }
  for (const auto& issue : object_violations(f.target(), inst)) {
    report.violations.push_back("target: " + issue);
  }
  if (!report.violations.empty()) return report;

  if (f.node_map().size() != xs.node_count() ||
      f.edge_map().size() != xs.edge_count()) {
    report.violations.push_back("not total");
    return report;
  }
  if (!is_homomorphism(f, inst)) {
    report.violations.push_back("not a homomorphism of instance '" + inst.name() + "'");
    return report;
  }
  report.valid = true;
  report.is_mono_in_M = in_mono_class(f, inst);
  report.is_iso = f.bijective() && (!inst.is_polarized() || is_strict(f));
  return report;
}

void require_morphism(const Morphism& f, const CategoryInstance& inst,
                      const char* what) {
  auto report = validate_morphism(f, inst);
  if (report.structural_error) {
    throw StructuralError(std::string(what) + ": " + *report.structural_error);
  }
  if (!report.valid) {
    std::string msg = std::string(what) + " is not a valid morphism:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw PreconditionError(msg);
  }
}

// ---------------------------------------------------------------------------
// Polarity functors

Object pol_forget(const Object& x) { return Object{x.graph, x.typing, {}}; }

Object pol_induce(const Graph& x) {
  return Object{x, {}, Polarity{x.nodes(), x.nodes()}};
}

Object pol_minimal(const Graph& x) {
  Polarity p;
  for (const auto& [e, ends] : x.edges()) {
    p.plus.insert(ends.src);
    p.minus.insert(ends.tgt);
  }
  return Object{x, {}, std::move(p)};
}

Morphism pol_forget(const Morphism& f) {
  return Morphism(make_object(pol_forget(f.source())),
                  make_object(pol_forget(f.target())), f.node_map(),
                  f.edge_map());
}

Morphism pol_induce(const Morphism& f) {
  return Morphism(make_object(pol_induce(f.source().graph)),
                  make_object(pol_induce(f.target().graph)), f.node_map(),
                  f.edge_map());
}

Morphism relax_polarity(const ObjectRef& x) {
  auto id = identity(x);
  return Morphism(x, make_object(pol_induce(x->graph)), id.node_map(),
                  id.edge_map());
}

// ---------------------------------------------------------------------------

std::string describe(const Object& x) {
  std::ostringstream os;
  os << "{nodes:[";
  bool first = true;
  for (const auto& n : x.graph.nodes()) {
    os << (first ? "" : ",") << n;
    auto t = x.typing.nodes.find(n);
    if (t != x.typing.nodes.end()) os << ':' << t->second;
    if (x.is_plus(n) || x.is_minus(n)) {
      os << '[' << (x.is_plus(n) ? "+" : "") << (x.is_minus(n) ? "-" : "") << ']';
    }
    first = false;
  }
  os << "] edges:[";
  first = true;
  for (const auto& [e, ends] : x.graph.edges()) {
    os << (first ? "" : ",") << e << '=' << ends.src << "->" << ends.tgt;
    auto t = x.typing.edges.find(e);
    if (t != x.typing.edges.end()) os << ':' << t->second;
    first = false;
  }
  os << "]}";
  return os.str();
}

std::string describe(const Morphism& f) {
  std::ostringstream os;
  os << describe(f.source()) << " -> " << describe(f.target()) << " by {";
  bool first = true;
  for (const auto& [x, y] : f.node_map()) {
    os << (first ? "" : ",") << x << "↦" << y;
    first = false;
  }
  for (const auto& [x, y] : f.edge_map()) {
    os << (first ? "" : ",") << x << "↦" << y;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace agree
