#include "agree/classifier.hpp"

#include <vector>

#include "agree/error.hpp"

namespace agree {

const NodeId& ClassifiedObject::star_node(const NodeId& type) const {
  auto it = star_node_index.find(type);
  if (it == star_node_index.end()) {
    throw PreconditionError("no star node for type '" + type + "'");
  }
  return it->second;
}

const EdgeId& ClassifiedObject::star_edge(const NodeId& src, const NodeId& tgt,
                                          const EdgeId& type) const {
  auto it = star_edge_index.find({src, tgt, type});
  if (it == star_edge_index.end()) {
    throw PreconditionError("no star edge from '" + src + "' to '" + tgt + "'" +
                            (type.empty() ? "" : " of type '" + type + "'"));
  }
  return it->second;
}

namespace {

std::string fresh(std::string id, const auto& taken) {
  while (taken.contains(id)) id += '\'';
  return id;
}

}  // namespace

ClassifiedObject t_object(const ObjectRef& y, const CategoryInstance& inst) {
  Object t = *y;
  std::set<NodeId> star_nodes;
  std::set<EdgeId> star_edges;
  std::map<NodeId, NodeId> node_index;
  std::map<std::tuple<NodeId, NodeId, EdgeId>, EdgeId> edge_index;

  auto add_star_edge = [&](const NodeId& s, const NodeId& d, const EdgeId& type) {
    std::string id = "*(" + s + "," + d + ")";
    if (!type.empty()) id += ":" + type;
    id = fresh(std::move(id), t.graph.edges());
    t.graph.add_edge(id, s, d);
    if (!type.empty()) t.typing.edges.emplace(id, type);
    star_edges.insert(id);
    edge_index.emplace(std::tuple{s, d, type}, id);
  };

  if (inst.is_typed()) {
    const Graph& type = inst.typegraph();
    for (const auto& tau : type.nodes()) {
      NodeId id = fresh("*:" + tau, t.graph.nodes());
      t.graph.add_node(id);
      t.typing.nodes.emplace(id, tau);
      star_nodes.insert(id);
      node_index.emplace(tau, id);
    }
    // One edge per pair of nodes of the enlarged graph and compatible type.
    std::map<Endpoints, std::vector<EdgeId>> edge_types;
    for (const auto& [eps, ends] : type.edges()) edge_types[ends].push_back(eps);
    const std::vector<NodeId> all(t.graph.nodes().begin(), t.graph.nodes().end());
    for (const auto& s : all) {
      for (const auto& d : all) {
        auto it = edge_types.find({t.node_type(s), t.node_type(d)});
        if (it == edge_types.end()) continue;
        for (const auto& eps : it->second) add_star_edge(s, d, eps);
      }
    }
  } else {
    NodeId star = fresh("*", t.graph.nodes());
    t.graph.add_node(star);
    star_nodes.insert(star);
    node_index.emplace(NodeId{}, star);
    std::vector<NodeId> sources;
    std::vector<NodeId> targets;
    for (const auto& n : y->graph.nodes()) {
      if (!inst.is_polarized() || y->is_plus(n)) sources.push_back(n);
      if (!inst.is_polarized() || y->is_minus(n)) targets.push_back(n);
    }
    sources.push_back(star);
    targets.push_back(star);
    if (inst.is_polarized()) {
      t.polarity.plus.insert(star);
      t.polarity.minus.insert(star);
    }
    for (const auto& s : sources) {
      for (const auto& d : targets) add_star_edge(s, d, {});
    }
  }

  ObjectRef total = make_object(std::move(t));
  auto id = identity(y);
  Morphism unit(y, total, id.node_map(), id.edge_map());
  return ClassifiedObject{y,
                          total,
                          std::move(unit),
                          std::move(star_nodes),
                          std::move(star_edges),
                          std::move(node_index),
                          std::move(edge_index)};
}

namespace {

NodeId type_key(const Object& x, const NodeId& n, const CategoryInstance& inst) {
  return inst.is_typed() ? x.node_type(n) : NodeId{};
}

EdgeId edge_type_key(const Object& x, const EdgeId& e,
                     const CategoryInstance& inst) {
  return inst.is_typed() ? x.edge_type(e) : EdgeId{};
}

bool typed_star_index(const ClassifiedObject& c) {
  return !c.star_node_index.contains(NodeId{});
}

}  // namespace

Morphism t_morphism(const Morphism& f, const ClassifiedObject& tx,
                    const ClassifiedObject& ty) {
  const bool typed = typed_star_index(tx);
  const Object& total = *tx.total;
  NodeMap nodes;
  EdgeMap edges;
  for (const auto& n : total.graph.nodes()) {
    if (tx.star_nodes.contains(n)) {
      nodes.emplace(n, ty.star_node(typed ? total.node_type(n) : NodeId{}));
    } else {
      nodes.emplace(n, f.node(n));
    }
  }
  for (const auto& [e, ends] : total.graph.edges()) {
    if (tx.star_edges.contains(e)) {
      edges.emplace(e, ty.star_edge(nodes.at(ends.src), nodes.at(ends.tgt),
                                    typed ? total.edge_type(e) : EdgeId{}));
    } else {
      edges.emplace(e, f.edge(e));
    }
  }
  return Morphism(tx.total, ty.total, std::move(nodes), std::move(edges));
}

Morphism t_morphism(const Morphism& f, const CategoryInstance& inst) {
  return t_morphism(f, t_object(f.source_ref(), inst),
                    t_object(f.target_ref(), inst));
}

Morphism phi(const Morphism& m, const Morphism& f, const ClassifiedObject& ty,
             const CategoryInstance& inst) {
  if (!same_object(m.source_ref(), f.source_ref())) {
    throw UsageError("phi: partial map legs have different sources");
  }
  if (!same_object(f.target_ref(), ty.base)) {
    throw UsageError("phi: classifier built for a different object");
  }
  if (!in_mono_class(m, inst)) {
    throw PreconditionError("phi: first leg is not a mono in M");
  }
  const Object& z = m.target();
  NodeMap inv_nodes;
  EdgeMap inv_edges;
  for (const auto& [x, zn] : m.node_map()) inv_nodes.emplace(zn, x);
  for (const auto& [x, ze] : m.edge_map()) inv_edges.emplace(ze, x);

  NodeMap nodes;
  EdgeMap edges;
  for (const auto& n : z.graph.nodes()) {
    auto it = inv_nodes.find(n);
    nodes.emplace(n, it != inv_nodes.end()
                         ? f.node(it->second)
                         : ty.star_node(type_key(z, n, inst)));
  }
  for (const auto& [e, ends] : z.graph.edges()) {
    auto it = inv_edges.find(e);
    edges.emplace(e, it != inv_edges.end()
                         ? f.edge(it->second)
                         : ty.star_edge(nodes.at(ends.src), nodes.at(ends.tgt),
                                        edge_type_key(z, e, inst)));
  }
  return Morphism(m.target_ref(), ty.total, std::move(nodes), std::move(edges));
}

Morphism phi(const Morphism& m, const Morphism& f, const CategoryInstance& inst) {
  return phi(m, f, t_object(f.target_ref(), inst), inst);
}

Morphism bar(const Morphism& m, const CategoryInstance& inst) {
  return phi(m, identity(m.source_ref()), inst);
}

std::pair<Morphism, Morphism> truth_values(const CategoryInstance& inst) {
  Constants c = constants(inst);
  ClassifiedObject t1 = t_object(c.final_object, inst);
  ClassifiedObject t0 = t_object(c.initial_object, inst);
  Morphism to_one = bang(t0.total, inst);
  if (!to_one.bijective()) {
    throw std::logic_error("T(0) is not isomorphic to 1");
  }
  Morphism false_pt = compose(t_morphism(zero(c.final_object, inst), t0, t1),
                              inverse(to_one));
  return {t1.unit, std::move(false_pt)};
}

Characteristic characteristic(const Morphism& m, const CategoryInstance& inst) {
  auto [true_pt, false_pt] = truth_values(inst);
  Morphism chi = phi(m, bang(m.source_ref(), inst), inst);
  return Characteristic{std::move(chi), std::move(true_pt), std::move(false_pt)};
}

}  // namespace agree
