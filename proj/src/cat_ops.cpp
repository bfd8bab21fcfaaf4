#include "agree/cat_ops.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "agree/error.hpp"

namespace agree {

std::string pair_id(const std::string& x, const std::string& y) {
  return "(" + x + "," + y + ")";
}

const NodeId& Pullback::node_of(const NodeId& x, const NodeId& y) const {
  auto it = node_index.find({x, y});
  if (it == node_index.end()) {
    throw PreconditionError("(" + x + "," + y + ") is not a node of the pullback");
  }
  return it->second;
}

const EdgeId& Pullback::edge_of(const EdgeId& x, const EdgeId& y) const {
  auto it = edge_index.find({x, y});
  if (it == edge_index.end()) {
    throw PreconditionError("(" + x + "," + y + ") is not an edge of the pullback");
  }
  return it->second;
}

namespace {

template <typename Map>
std::map<typename Map::mapped_type, std::vector<typename Map::key_type>>
fibres(const Map& m) {
  std::map<typename Map::mapped_type, std::vector<typename Map::key_type>> out;
  for (const auto& [k, v] : m) out[v].push_back(k);
  return out;
}

}  // namespace

Pullback pullback(const Morphism& f, const Morphism& g,
                  const CategoryInstance& inst) {
  if (!same_object(f.target_ref(), g.target_ref())) {
    throw UsageError("pullback of arrows with different targets");
  }
  const Object& x = f.source();
  const Object& y = g.source();

  Object p;
  NodeMap p1n, p2n;
  EdgeMap p1e, p2e;
  std::map<std::pair<NodeId, NodeId>, NodeId> node_index;
  std::map<std::pair<EdgeId, EdgeId>, EdgeId> edge_index;

  auto ny = fibres(g.node_map());
  for (const auto& [xn, zn] : f.node_map()) {
    auto it = ny.find(zn);
    if (it == ny.end()) continue;
    for (const auto& yn : it->second) {
      NodeId id = pair_id(xn, yn);
      if (p.graph.has_node(id)) {
        throw UsageError("pullback node id '" + id + "' is ambiguous");
      }
      p.graph.add_node(id);
      node_index.emplace(std::pair{xn, yn}, id);
      p1n.emplace(id, xn);
      p2n.emplace(id, yn);
      if (inst.is_typed()) p.typing.nodes.emplace(id, x.node_type(xn));
      if (inst.is_polarized()) {
        if (x.is_plus(xn) && y.is_plus(yn)) p.polarity.plus.insert(id);
        if (x.is_minus(xn) && y.is_minus(yn)) p.polarity.minus.insert(id);
      }
    }
  }

  auto ey = fibres(g.edge_map());
  for (const auto& [xe, ze] : f.edge_map()) {
    auto it = ey.find(ze);
    if (it == ey.end()) continue;
    const Endpoints& xends = x.graph.ends(xe);
    for (const auto& ye : it->second) {
      const Endpoints& yends = y.graph.ends(ye);
      EdgeId id = pair_id(xe, ye);
      if (p.graph.has_edge(id)) {
        throw UsageError("pullback edge id '" + id + "' is ambiguous");
      }
      p.graph.add_edge(id, node_index.at({xends.src, yends.src}),
                       node_index.at({xends.tgt, yends.tgt}));
      edge_index.emplace(std::pair{xe, ye}, id);
      p1e.emplace(id, xe);
      p2e.emplace(id, ye);
      if (inst.is_typed()) p.typing.edges.emplace(id, x.edge_type(xe));
    }
  }

  ObjectRef obj = make_object(std::move(p));
  Pullback pb{f,
              g,
              obj,
              Morphism(obj, f.source_ref(), std::move(p1n), std::move(p1e)),
              Morphism(obj, g.source_ref(), std::move(p2n), std::move(p2e)),
              std::move(node_index),
              std::move(edge_index)};
  assert(!g.injective() || pb.p1.injective());
  return pb;
}

Morphism pullback_mediator(const Pullback& pb, const Morphism& v,
                           const Morphism& w) {
  if (!same_object(v.source_ref(), w.source_ref())) {
    throw UsageError("mediator cone legs have different sources");
  }
  if (!same_object(v.target_ref(), pb.f.source_ref()) ||
      !same_object(w.target_ref(), pb.g.source_ref())) {
    throw UsageError("mediator cone does not end at the cospan");
  }
  auto fv = compose(pb.f, v);
  auto gw = compose(pb.g, w);
  if (fv.node_map() != gw.node_map() || fv.edge_map() != gw.edge_map()) {
    throw PreconditionError("mediator cone does not commute");
  }
  NodeMap nodes;
  EdgeMap edges;
  for (const auto& [a, b] : v.node_map()) {
    nodes.emplace(a, pb.node_of(b, w.node(a)));
  }
  for (const auto& [a, b] : v.edge_map()) {
    edges.emplace(a, pb.edge_of(b, w.edge(a)));
  }
  return Morphism(v.source_ref(), pb.object, std::move(nodes), std::move(edges));
}

Pushout pushout_along_mono(const Morphism& n, const Morphism& r,
                           const CategoryInstance& inst) {
  if (inst.is_polarized()) {
    throw UsageError("pushouts are not available in instance 'pol'");
  }
  if (!same_object(n.source_ref(), r.source_ref())) {
    throw UsageError("pushout of arrows with different sources");
  }
  if (!in_mono_class(n, inst)) {
    throw PreconditionError("pushout_along_mono: first leg is not a mono in M");
  }
  const Object& d = n.target();
  const Object& rr = r.target();

  // Inverse of n on its image.
  NodeMap n_inv_nodes;
  EdgeMap n_inv_edges;
  for (const auto& [k, x] : n.node_map()) n_inv_nodes.emplace(x, k);
  for (const auto& [k, x] : n.edge_map()) n_inv_edges.emplace(x, k);

  Object h;
  NodeMap hn, pn;
  EdgeMap he, pe;
  for (const auto& y : rr.graph.nodes()) {
    NodeId id = "R:" + y;
    h.graph.add_node(id);
    pn.emplace(y, id);
    if (inst.is_typed()) h.typing.nodes.emplace(id, rr.node_type(y));
  }
  for (const auto& x : d.graph.nodes()) {
    auto k = n_inv_nodes.find(x);
    if (k != n_inv_nodes.end()) {
      hn.emplace(x, "R:" + r.node(k->second));
      continue;
    }
    NodeId id = "D:" + x;
    h.graph.add_node(id);
    hn.emplace(x, id);
    if (inst.is_typed()) h.typing.nodes.emplace(id, d.node_type(x));
  }
  for (const auto& [e, ends] : rr.graph.edges()) {
    EdgeId id = "R:" + e;
    h.graph.add_edge(id, pn.at(ends.src), pn.at(ends.tgt));
    pe.emplace(e, id);
    if (inst.is_typed()) h.typing.edges.emplace(id, rr.edge_type(e));
  }
  for (const auto& [e, ends] : d.graph.edges()) {
    auto k = n_inv_edges.find(e);
    if (k != n_inv_edges.end()) {
      he.emplace(e, "R:" + r.edge(k->second));
      continue;
    }
    EdgeId id = "D:" + e;
    h.graph.add_edge(id, hn.at(ends.src), hn.at(ends.tgt));
    he.emplace(e, id);
    if (inst.is_typed()) h.typing.edges.emplace(id, d.edge_type(e));
  }

  ObjectRef obj = make_object(std::move(h));
  return Pushout{obj, Morphism(n.target_ref(), obj, std::move(hn), std::move(he)),
                 Morphism(r.target_ref(), obj, std::move(pn), std::move(pe))};
}

// ---------------------------------------------------------------------------
// Constants

namespace {

const char* const kFinalNode = "1";
const char* const kFinalLoop = "1";

}  // namespace

Constants constants(const CategoryInstance& inst) {
  Object one;
  switch (inst.kind()) {
    case Kind::Gr:
    case Kind::GrPol:
      one.graph.add_node(kFinalNode);
      one.graph.add_edge(kFinalLoop, kFinalNode, kFinalNode);
      if (inst.is_polarized()) {
        one.polarity.plus.insert(kFinalNode);
        one.polarity.minus.insert(kFinalNode);
      }
      break;
    case Kind::Typed: {
      one.graph = inst.typegraph();
      for (const auto& n : one.graph.nodes()) one.typing.nodes.emplace(n, n);
      for (const auto& [e, ends] : one.graph.edges()) one.typing.edges.emplace(e, e);
      break;
    }
  }
  // 0 -> 1 is injective, and strict because 0 has no nodes to reflect.
  return Constants{make_object(std::move(one)), make_object(Object{}), true};
}

Morphism bang(const ObjectRef& x, const CategoryInstance& inst) {
  ObjectRef one = constants(inst).final_object;
  NodeMap nodes;
  EdgeMap edges;
  if (inst.is_typed()) {
    nodes = x->typing.nodes;
    edges = x->typing.edges;
  } else {
    for (const auto& n : x->graph.nodes()) nodes.emplace(n, kFinalNode);
    for (const auto& [e, ends] : x->graph.edges()) edges.emplace(e, kFinalLoop);
  }
  return Morphism(x, one, std::move(nodes), std::move(edges));
}

Morphism zero(const ObjectRef& x, const CategoryInstance& inst) {
  return Morphism(constants(inst).initial_object, x, {}, {});
}

// ---------------------------------------------------------------------------
// Squares

bool commutes(const Square& sq) {
  if (!same_object(sq.top.source_ref(), sq.left.source_ref()) ||
      !same_object(sq.top.target_ref(), sq.right.source_ref()) ||
      !same_object(sq.left.target_ref(), sq.bottom.source_ref()) ||
      !same_object(sq.right.target_ref(), sq.bottom.target_ref())) {
    return false;
  }
  auto a = compose(sq.right, sq.top);
  auto b = compose(sq.bottom, sq.left);
  return a.node_map() == b.node_map() && a.edge_map() == b.edge_map();
}

bool is_pullback_square(const Square& sq, const CategoryInstance& inst) {
  if (!commutes(sq)) throw PreconditionError("square does not commute");
  Pullback pb = pullback(sq.right, sq.bottom, inst);
  Morphism z = pullback_mediator(pb, sq.top, sq.left);
  return z.bijective() && (!inst.is_polarized() || is_strict(z));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Degrees {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t loops = 0;
  bool operator==(const Degrees&) const = default;
};

std::map<NodeId, Degrees> degrees(const Graph& g) {
  std::map<NodeId, Degrees> out;
  for (const auto& n : g.nodes()) out[n];
  for (const auto& [e, ends] : g.edges()) {
    ++out[ends.src].out;
    ++out[ends.tgt].in;
    if (ends.src == ends.tgt) ++out[ends.src].loops;
  }
  return out;
}

class MorphismSearch {
 public:
  MorphismSearch(const ObjectRef& x, const ObjectRef& y,
                 const CategoryInstance& inst, const SearchOptions& options,
                 const std::function<bool(const Morphism&)>& visit)
      : x_(x), y_(y), inst_(inst), options_(options), visit_(visit) {
    injective_ = options.injective || options.mono_in_M;
    strict_ = options.mono_in_M && inst.uses_strict_monos();
    xnodes_.assign(x->graph.nodes().begin(), x->graph.nodes().end());
    for (const auto& [e, ends] : x->graph.edges()) xedges_.push_back(e);
    for (const auto& [e, ends] : y->graph.edges()) {
      parallel_[{ends.src, ends.tgt}].push_back(e);
    }
    std::map<NodeId, std::size_t> position;
    for (std::size_t i = 0; i < xnodes_.size(); ++i) position[xnodes_[i]] = i;
    closing_.resize(xnodes_.size());
    for (const auto& [e, ends] : x->graph.edges()) {
      closing_[std::max(position[ends.src], position[ends.tgt])].push_back(e);
    }
    for (const auto& xn : xnodes_) {
      std::vector<NodeId> cands;
      for (const auto& yn : y->graph.nodes()) {
        if (node_admissible(xn, yn)) cands.push_back(yn);
      }
      candidates_.push_back(std::move(cands));
    }
  }

  void run() {
    if (injective_ && (x_->graph.node_count() > y_->graph.node_count() ||
                       x_->graph.edge_count() > y_->graph.edge_count())) {
      return;
    }
    assign_node(0);
  }

 private:
  bool node_admissible(const NodeId& xn, const NodeId& yn) const {
    if (options_.node_filter && !options_.node_filter(xn, yn)) return false;
    if (inst_.is_typed() && x_->node_type(xn) != y_->node_type(yn)) return false;
    if (inst_.is_polarized()) {
      bool xp = x_->is_plus(xn), xm = x_->is_minus(xn);
      bool yp = y_->is_plus(yn), ym = y_->is_minus(yn);
      if ((xp && !yp) || (xm && !ym)) return false;
      if (strict_ && (xp != yp || xm != ym)) return false;
    }
    return true;
  }

  bool edge_admissible(const EdgeId& xe, const EdgeId& ye) const {
    if (options_.edge_filter && !options_.edge_filter(xe, ye)) return false;
    if (inst_.is_typed() && x_->edge_type(xe) != y_->edge_type(ye)) return false;
    return true;
  }

  const std::vector<EdgeId>& parallel(const NodeId& s, const NodeId& t) const {
    static const std::vector<EdgeId> kNone;
    auto it = parallel_.find({s, t});
    return it == parallel_.end() ? kNone : it->second;
  }

  bool edge_has_image(const EdgeId& xe) const {
    const Endpoints& ends = x_->graph.ends(xe);
    for (const auto& ye : parallel(nodes_.at(ends.src), nodes_.at(ends.tgt))) {
      if (edge_admissible(xe, ye)) return true;
    }
    return false;
  }

  bool assign_node(std::size_t i) {
    if (i == xnodes_.size()) return assign_edge(0);
    const NodeId& xn = xnodes_[i];
    for (const auto& yn : candidates_[i]) {
      if (injective_ && used_nodes_.contains(yn)) continue;
      nodes_[xn] = yn;
      if (injective_) used_nodes_.insert(yn);
      bool ok = std::all_of(closing_[i].begin(), closing_[i].end(),
                            [&](const EdgeId& e) { return edge_has_image(e); });
      bool keep_going = !ok || assign_node(i + 1);
      if (injective_) used_nodes_.erase(yn);
      nodes_.erase(xn);
      if (!keep_going) return false;
    }
    return true;
  }

  bool assign_edge(std::size_t i) {
    if (i == xedges_.size()) {
      Morphism m(x_, y_, nodes_, edges_);
      return visit_(m);
    }
    const EdgeId& xe = xedges_[i];
    const Endpoints& ends = x_->graph.ends(xe);
    for (const auto& ye : parallel(nodes_.at(ends.src), nodes_.at(ends.tgt))) {
      if (!edge_admissible(xe, ye)) continue;
      if (injective_ && used_edges_.contains(ye)) continue;
      edges_[xe] = ye;
      if (injective_) used_edges_.insert(ye);
      bool keep_going = assign_edge(i + 1);
      if (injective_) used_edges_.erase(ye);
      edges_.erase(xe);
      if (!keep_going) return false;
    }
    return true;
  }

  const ObjectRef& x_;
  const ObjectRef& y_;
  const CategoryInstance& inst_;
  const SearchOptions& options_;
  const std::function<bool(const Morphism&)>& visit_;
  bool injective_ = false;
  bool strict_ = false;

  std::vector<NodeId> xnodes_;
  std::vector<EdgeId> xedges_;
  std::vector<std::vector<NodeId>> candidates_;
  // Edges whose later endpoint (in xnodes_ order) is the i-th node.
  std::vector<std::vector<EdgeId>> closing_;
  std::map<std::pair<NodeId, NodeId>, std::vector<EdgeId>> parallel_;

  NodeMap nodes_;
  EdgeMap edges_;
  std::set<NodeId> used_nodes_;
  std::set<EdgeId> used_edges_;
};

}  // namespace

void for_each_morphism(const ObjectRef& x, const ObjectRef& y,
                       const CategoryInstance& inst,
                       const SearchOptions& options,
                       const std::function<bool(const Morphism&)>& visit) {
  MorphismSearch(x, y, inst, options, visit).run();
}

std::vector<Morphism> all_morphisms(const ObjectRef& x, const ObjectRef& y,
                                    const CategoryInstance& inst,
                                    const SearchOptions& options) {
  std::vector<Morphism> out;
  for_each_morphism(x, y, inst, options, [&](const Morphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::size_t count_morphisms(const ObjectRef& x, const ObjectRef& y,
                            const CategoryInstance& inst,
                            const SearchOptions& options, std::size_t limit) {
  std::size_t count = 0;
  for_each_morphism(x, y, inst, options, [&](const Morphism&) {
    return ++count < limit;
  });
  return count;
}

namespace {

std::optional<Morphism> first_iso(const ObjectRef& x, const ObjectRef& y,
                                  const CategoryInstance& inst,
                                  SearchOptions options) {
  if (x->graph.node_count() != y->graph.node_count() ||
      x->graph.edge_count() != y->graph.edge_count()) {
    return std::nullopt;
  }
  auto dx = degrees(x->graph);
  auto dy = degrees(y->graph);
  auto extra = std::move(options.node_filter);
  options.node_filter = [&, extra](const NodeId& a, const NodeId& b) {
    if (dx.at(a) != dy.at(b)) return false;
    if (inst.is_polarized() &&
        (x->is_plus(a) != y->is_plus(b) || x->is_minus(a) != y->is_minus(b))) {
      return false;
    }
    return !extra || extra(a, b);
  };
  options.injective = true;
  std::optional<Morphism> found;
  for_each_morphism(x, y, inst, options, [&](const Morphism& m) {
    found = m;
    return false;
  });
  return found;
}

}  // namespace

std::optional<Morphism> iso_search(const ObjectRef& x, const ObjectRef& y,
                                   const CategoryInstance& inst) {
  return first_iso(x, y, inst, {});
}

std::optional<Morphism> iso_over(const Morphism& fx, const Morphism& fy,
                                 const CategoryInstance& inst) {
  if (!same_object(fx.target_ref(), fy.target_ref())) {
    throw UsageError("iso_over: arrows have different targets");
  }
  SearchOptions options;
  options.node_filter = [&](const NodeId& a, const NodeId& b) {
    return fx.node(a) == fy.node(b);
  };
  options.edge_filter = [&](const EdgeId& a, const EdgeId& b) {
    return fx.edge(a) == fy.edge(b);
  };
  return first_iso(fx.source_ref(), fy.source_ref(), inst, std::move(options));
}

}  // namespace agree
