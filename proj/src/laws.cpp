#include "agree/laws.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

#include "agree/cat_ops.hpp"
#include "agree/classifier.hpp"
#include "agree/error.hpp"
#include "agree/io.hpp"

namespace agree::laws {

using json = nlohmann::json;

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  return splitmix(splitmix(seed) ^ (i * 0xd1b54a32d192ed03ULL));
}

template <typename T>
const T& pick(Generator& gen, const std::vector<T>& items) {
  return items[gen.below(items.size())];
}

std::vector<NodeId> node_list(const Object& x) {
  return {x.graph.nodes().begin(), x.graph.nodes().end()};
}

}  // namespace

Graph default_typegraph() {
  Graph tg;
  tg.add_node("A");
  tg.add_node("B");
  tg.add_edge("x", "A", "B");
  tg.add_edge("y", "B", "A");
  tg.add_edge("z", "B", "B");
  return tg;
}

CategoryInstance instance_named(const std::string& name) {
  if (name == "gr") return CategoryInstance::gr();
  if (name == "typed") return CategoryInstance::typed(default_typegraph());
  if (name == "pol") return CategoryInstance::grpol();
  if (name == "set") return CategoryInstance::set();
  throw UsageError("unknown category '" + name + "' (expected gr, typed, pol or set)");
}

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(std::uint64_t seed, Bounds bounds, CategoryInstance inst)
    : engine_(seed), bounds_(bounds), inst_(std::move(inst)) {}

std::size_t Generator::below(std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n);
}

bool Generator::coin() { return below(2) == 0; }

Object Generator::fresh_object() const { return Object{}; }

void Generator::add_random_node(Object& x, const std::string& id) {
  x.graph.add_node(id);
  if (inst_.is_typed()) {
    std::vector<NodeId> types(inst_.typegraph().nodes().begin(),
                              inst_.typegraph().nodes().end());
    x.typing.nodes[id] = pick(*this, types);
  }
  if (inst_.is_polarized()) {
    if (below(4) != 0) x.polarity.plus.insert(id);
    if (below(4) != 0) x.polarity.minus.insert(id);
  }
}

bool Generator::add_random_edge(Object& x, const std::string& id,
                                const std::vector<NodeId>& sources,
                                const std::vector<NodeId>& targets) {
  if (sources.empty() || targets.empty()) return false;
  const NodeId s = pick(*this, sources);
  const NodeId t = pick(*this, targets);
  if (inst_.is_polarized() && !(x.is_plus(s) && x.is_minus(t))) return false;
  std::optional<EdgeId> type;
  if (inst_.is_typed()) {
    std::vector<EdgeId> fits;
    for (const auto& [e, ends] : inst_.typegraph().edges()) {
      if (ends.src == x.node_type(s) && ends.tgt == x.node_type(t)) fits.push_back(e);
    }
    if (fits.empty()) return false;
    type = pick(*this, fits);
  }
  x.graph.add_edge(id, s, t);
  if (type) x.typing.edges[id] = *type;
  return true;
}

ObjectRef Generator::graph(const std::string& prefix) {
  Object x = fresh_object();
  const std::size_t n = below(bounds_.nodes + 1);
  for (std::size_t i = 0; i < n; ++i) add_random_node(x, prefix + std::to_string(i));
  const std::size_t e = n == 0 ? 0 : below(bounds_.edges + 1);
  const auto nodes = node_list(x);
  std::size_t made = 0;
  for (std::size_t i = 0; i < e; ++i) {
    if (add_random_edge(x, prefix + "e" + std::to_string(made), nodes, nodes)) ++made;
  }
  return make_object(std::move(x));
}

Morphism Generator::arrow_from(const ObjectRef& x, const std::string& prefix) {
  Object y = fresh_object();
  NodeMap nodes;
  std::size_t fresh = 0;
  for (const auto& a : x->graph.nodes()) {
    std::vector<NodeId> compatible;
    for (const auto& b : y.graph.nodes()) {
      if (!inst_.is_typed() || y.node_type(b) == x->node_type(a)) compatible.push_back(b);
    }
    const bool full = y.graph.node_count() >= bounds_.nodes;
    if (!compatible.empty() && (full || below(4) == 0)) {
      nodes[a] = pick(*this, compatible);
    } else {
      NodeId b = prefix + std::to_string(fresh++);
      y.graph.add_node(b);
      if (inst_.is_typed()) y.typing.nodes[b] = x->node_type(a);
      nodes[a] = b;
    }
    if (x->is_plus(a)) y.polarity.plus.insert(nodes[a]);
    if (x->is_minus(a)) y.polarity.minus.insert(nodes[a]);
  }
  while (y.graph.node_count() < bounds_.nodes && below(3) == 0) {
    add_random_node(y, prefix + std::to_string(fresh++));
  }
  if (inst_.is_polarized()) {
    for (const auto& b : y.graph.nodes()) {
      if (below(4) == 0) y.polarity.plus.insert(b);
      if (below(4) == 0) y.polarity.minus.insert(b);
    }
  }

  EdgeMap edges;
  std::size_t fresh_edges = 0;
  for (const auto& [e, ends] : x->graph.edges()) {
    const NodeId& s = nodes.at(ends.src);
    const NodeId& t = nodes.at(ends.tgt);
    std::vector<EdgeId> parallel;
    for (const auto& [f, fe] : y.graph.edges()) {
      if (fe.src != s || fe.tgt != t) continue;
      if (inst_.is_typed() && y.edge_type(f) != x->edge_type(e)) continue;
      parallel.push_back(f);
    }
    const bool full = y.graph.edge_count() >= bounds_.edges;
    if (!parallel.empty() && (full || below(4) == 0)) {
      edges[e] = pick(*this, parallel);
    } else {
      EdgeId f = prefix + "e" + std::to_string(fresh_edges++);
      y.graph.add_edge(f, s, t);
      if (inst_.is_typed()) y.typing.edges[f] = x->edge_type(e);
      edges[e] = f;
    }
  }
  const auto all = node_list(y);
  const std::size_t room =
      bounds_.edges > y.graph.edge_count() ? bounds_.edges - y.graph.edge_count() : 0;
  const std::size_t extra = below(room + 1);
  for (std::size_t i = 0; i < extra; ++i) {
    if (add_random_edge(y, prefix + "e" + std::to_string(fresh_edges), all, all)) {
      ++fresh_edges;
    }
  }
  return Morphism(x, make_object(std::move(y)), std::move(nodes), std::move(edges));
}

Morphism Generator::mono_from(const ObjectRef& x, const std::string& prefix) {
  Object y = fresh_object();
  NodeMap nodes;
  for (const auto& a : x->graph.nodes()) {
    NodeId b = prefix + a;
    y.graph.add_node(b);
    if (inst_.is_typed()) y.typing.nodes[b] = x->node_type(a);
    if (x->is_plus(a)) y.polarity.plus.insert(b);
    if (x->is_minus(a)) y.polarity.minus.insert(b);
    nodes[a] = b;
  }
  EdgeMap edges;
  for (const auto& [e, ends] : x->graph.edges()) {
    EdgeId f = prefix + e;
    y.graph.add_edge(f, nodes.at(ends.src), nodes.at(ends.tgt));
    if (inst_.is_typed()) y.typing.edges[f] = x->edge_type(e);
    edges[e] = f;
  }
  const std::size_t node_room =
      bounds_.nodes > y.graph.node_count() ? bounds_.nodes - y.graph.node_count() : 0;
  const std::size_t extra_nodes = below(node_room + 1);
  for (std::size_t i = 0; i < extra_nodes; ++i) {
    add_random_node(y, prefix + "x" + std::to_string(i));
  }
  const auto all = node_list(y);
  const std::size_t edge_room =
      bounds_.edges > y.graph.edge_count() ? bounds_.edges - y.graph.edge_count() : 0;
  const std::size_t extra_edges = below(edge_room + 1);
  std::size_t made = 0;
  for (std::size_t i = 0; i < extra_edges; ++i) {
    if (add_random_edge(y, prefix + "xe" + std::to_string(made), all, all)) ++made;
  }
  return Morphism(x, make_object(std::move(y)), std::move(nodes), std::move(edges));
}

Morphism Generator::mono_into(const ObjectRef& y, const std::string& prefix) {
  Object x = fresh_object();
  NodeMap nodes;
  for (const auto& b : y->graph.nodes()) {
    if (!coin()) continue;
    NodeId a = prefix + b;
    x.graph.add_node(a);
    if (inst_.is_typed()) x.typing.nodes[a] = y->node_type(b);
    if (y->is_plus(b)) x.polarity.plus.insert(a);
    if (y->is_minus(b)) x.polarity.minus.insert(a);
    nodes[a] = b;
  }
  std::map<NodeId, NodeId> back;
  for (const auto& [a, b] : nodes) back[b] = a;
  EdgeMap edges;
  for (const auto& [f, ends] : y->graph.edges()) {
    if (!back.contains(ends.src) || !back.contains(ends.tgt) || !coin()) continue;
    EdgeId e = prefix + f;
    x.graph.add_edge(e, back.at(ends.src), back.at(ends.tgt));
    if (inst_.is_typed()) x.typing.edges[e] = y->edge_type(f);
    edges[e] = f;
  }
  return Morphism(make_object(std::move(x)), y, std::move(nodes), std::move(edges));
}

Morphism Generator::mono() { return mono_into(graph("g"), "l"); }

Morphism Generator::morphism() { return arrow_from(graph("x"), "y"); }

Rule Generator::span_rule() {
  ObjectRef k = graph("k");
  Morphism l = arrow_from(k, "l");
  Morphism r = arrow_from(k, "r");
  return make_sqpo_rule(std::move(l), std::move(r), inst_);
}

Rule Generator::psqpo_rule() {
  if (inst_.kind() != Kind::Gr) throw UsageError("PSqPO rules are generated in 'gr'");
  ObjectRef k = graph("k");
  Morphism l = arrow_from(k, "l");
  Morphism r = arrow_from(k, "r");
  Polarity pol;
  for (const auto& n : k->graph.nodes()) {
    if (coin()) pol.plus.insert(n);
    if (coin()) pol.minus.insert(n);
  }
  for (const auto& [e, ends] : k->graph.edges()) {
    (void)e;
    pol.plus.insert(ends.src);
    pol.minus.insert(ends.tgt);
  }
  return make_psqpo_rule(std::move(l), std::move(r), std::move(pol));
}

Rule Generator::local_rule() {
  ObjectRef k = graph("k");
  Morphism l = arrow_from(k, "l");
  Morphism r = arrow_from(k, "r");

  Object tk = *k;
  const ClassifiedObject t0 = t_object(make_object(Object{}), inst_);
  for (const auto& n : t0.total->graph.nodes()) {
    tk.graph.add_node(n);
    if (inst_.is_typed()) tk.typing.nodes[n] = t0.total->node_type(n);
    if (t0.total->is_plus(n)) tk.polarity.plus.insert(n);
    if (t0.total->is_minus(n)) tk.polarity.minus.insert(n);
  }
  for (const auto& [e, ends] : t0.total->graph.edges()) {
    tk.graph.add_edge(e, ends.src, ends.tgt);
    if (inst_.is_typed()) tk.typing.edges[e] = t0.total->edge_type(e);
  }
  const auto all = node_list(tk);
  const std::size_t extra = below(4);
  std::size_t made = 0;
  for (std::size_t i = 0; i < extra; ++i) {
    Object trial = tk;
    const EdgeId id = "te" + std::to_string(made);
    if (!add_random_edge(trial, id, all, all)) continue;
    const Endpoints& ends = trial.graph.ends(id);
    if (!k->graph.has_node(ends.src) && !k->graph.has_node(ends.tgt)) continue;
    tk = std::move(trial);
    ++made;
  }

  NodeMap nodes;
  for (const auto& n : k->graph.nodes()) nodes[n] = n;
  EdgeMap edges;
  for (const auto& [e, ends] : k->graph.edges()) {
    (void)ends;
    edges[e] = e;
  }
  Morphism t(k, make_object(std::move(tk)), std::move(nodes), std::move(edges));
  return make_agree_rule(std::move(l), std::move(r), std::move(t), inst_);
}

GenKind parse_gen_kind(const std::string& text) {
  if (text == "graph") return GenKind::Graph;
  if (text == "mono") return GenKind::Mono;
  if (text == "morphism") return GenKind::Morphism;
  if (text == "span-rule") return GenKind::SpanRule;
  if (text == "psqpo-rule") return GenKind::PsqpoRule;
  throw UsageError("unknown generator kind '" + text + "'");
}

Generated generate(GenKind kind, std::uint64_t seed, Bounds bounds,
                   const CategoryInstance& inst) {
  Generator gen(seed, bounds, inst);
  switch (kind) {
    case GenKind::Graph: return gen.graph();
    case GenKind::Mono: return gen.mono();
    case GenKind::Morphism: return gen.morphism();
    case GenKind::SpanRule: return gen.span_rule();
    case GenKind::PsqpoRule: return gen.psqpo_rule();
  }
  throw std::logic_error("unknown generator kind");
}

// ---------------------------------------------------------------------------
// Law ids

std::vector<LawId> all_laws() {
  return {LawId::EtaCartesian, LawId::PhiUnique,  LawId::PhiDecomp, LawId::ComplementT0,
          LawId::ComplementTlIso, LawId::Locality, LawId::FpbcFinal, LawId::SqpoAgree,
          LawId::PsqpoAgree,   LawId::CounitIso};
}

std::string to_string(LawId law) {
  switch (law) {
    case LawId::EtaCartesian: return "ETA_CARTESIAN";
    case LawId::PhiUnique: return "PHI_UNIQUE";
    case LawId::PhiDecomp: return "PHI_DECOMP";
    case LawId::ComplementT0: return "COMPLEMENT_T0";
    case LawId::ComplementTlIso: return "COMPLEMENT_TL_ISO";
    case LawId::Locality: return "LOCALITY";
    case LawId::FpbcFinal: return "FPBC_FINAL";
    case LawId::SqpoAgree: return "SQPO_AGREE";
    case LawId::PsqpoAgree: return "PSQPO_AGREE";
    case LawId::CounitIso: return "COUNIT_ISO";
  }
  return "?";
}

LawId parse_law(const std::string& text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
  for (LawId law : all_laws()) {
    if (to_string(law) == upper) return law;
  }
  throw UsageError("unknown law id '" + text + "'");
}

bool applicable(LawId law, const CategoryInstance& inst) {
  switch (law) {
    case LawId::Locality:
    case LawId::SqpoAgree:
      return !inst.is_polarized();
    case LawId::PsqpoAgree:
      return inst.kind() == Kind::Gr;
    default:
      return true;
  }
}

std::size_t default_instances(LawId law) {
  switch (law) {
    case LawId::FpbcFinal:
    case LawId::SqpoAgree:
    case LawId::PsqpoAgree:
    case LawId::Locality:
      return 100;
    default:
      return 200;
  }
}

// ---------------------------------------------------------------------------
// Laws

namespace {

struct Outcome {
  enum class Kind { Ok, Fail, Resample } kind = Kind::Ok;
  json detail;

  static Outcome ok() { return {}; }
  static Outcome resample() { return {Kind::Resample, {}}; }
};

class Evidence {
 public:
  explicit Evidence(const CategoryInstance& inst) : inst_(inst) {}

  Evidence& arrow(const std::string& name, const Morphism& f) {
    return arrow(name, f, inst_);
  }
  Evidence& arrow(const std::string& name, const Morphism& f,
                  const CategoryInstance& inst) {
    arrows_[name] = io::to_standalone_json(f, inst);
    return *this;
  }
  Evidence& rule(const Rule& r) {
    rule_ = io::to_json(r, inst_);
    return *this;
  }
  Outcome fail(const std::string& reason) const {
    json detail = {{"reason", reason}, {"arrows", arrows_}};
    if (!rule_.is_null()) detail["rule"] = rule_;
    return {Outcome::Kind::Fail, std::move(detail)};
  }

 private:
  const CategoryInstance& inst_;
  json arrows_ = json::object();
  json rule_;
};

bool is_iso(const Morphism& f, const CategoryInstance& inst) {
  return validate_morphism(f, inst).is_iso;
}

Outcome eta_cartesian(Generator& gen, const CategoryInstance& inst) {
  Morphism f = gen.morphism();
  auto tx = t_object(f.source_ref(), inst);
  auto ty = t_object(f.target_ref(), inst);
  Morphism tf = t_morphism(f, tx, ty);
  Square sq{f, tx.unit, ty.unit, tf};
  Evidence ev(inst);
  ev.arrow("f", f).arrow("T(f)", tf);
  if (!commutes(sq)) return ev.fail("naturality square of eta does not commute");
  if (!is_pullback_square(sq, inst)) return ev.fail("naturality square of eta is not a pullback");
  return Outcome::ok();
}

Outcome phi_unique(Generator& gen, const CategoryInstance& inst) {
  const std::size_t edges = gen.bounds().edges;
  ObjectRef z = gen.graph("z");
  Morphism m = gen.mono_into(z, "x");
  Morphism f = gen.arrow_from(m.source_ref(), "y");
  if (z->graph.node_count() > 3 || f.target().graph.node_count() > 2 ||
      z->graph.edge_count() > edges || f.target().graph.edge_count() > edges) {
    return Outcome::resample();
  }
  auto ty = t_object(f.target_ref(), inst);
  Morphism classifying = phi(m, f, ty, inst);
  Evidence ev(inst);
  ev.arrow("m", m).arrow("f", f).arrow("phi", classifying);
  if (!is_pullback_square(Square{f, m, ty.unit, classifying}, inst)) {
    return ev.fail("classifying square is not a pullback");
  }
  // Every arrow psi: Z -> T(Y) with psi∘m = eta∘f.
  NodeMap forced_nodes;
  for (const auto& [x, zx] : m.node_map()) forced_nodes[zx] = ty.unit.node(f.node(x));
  EdgeMap forced_edges;
  for (const auto& [x, zx] : m.edge_map()) forced_edges[zx] = ty.unit.edge(f.edge(x));
  SearchOptions options;
  options.node_filter = [&](const NodeId& a, const NodeId& b) {
    auto it = forced_nodes.find(a);
    return it == forced_nodes.end() || it->second == b;
  };
  options.edge_filter = [&](const EdgeId& a, const EdgeId& b) {
    auto it = forced_edges.find(a);
    return it == forced_edges.end() || it->second == b;
  };
  std::size_t pullbacks = 0;
  std::optional<Morphism> other;
  for_each_morphism(z, ty.total, inst, options, [&](const Morphism& psi) {
    if (!is_pullback_square(Square{f, m, ty.unit, psi}, inst)) return true;
    ++pullbacks;
    if (!(psi == classifying)) other = psi;
    return true;
  });
  if (pullbacks != 1 || other) {
    if (other) ev.arrow("other", *other);
    return ev.fail("expected exactly one classifying arrow, found " + std::to_string(pullbacks));
  }
  return Outcome::ok();
}

Morphism arrow_to(Generator& gen, const ObjectRef& z, const CategoryInstance& inst) {
  Object w;
  NodeMap nodes;
  const auto targets = node_list(*z);
  if (!targets.empty()) {
    const std::size_t n = gen.below(gen.bounds().nodes + 1);
    for (std::size_t i = 0; i < n; ++i) {
      NodeId a = "w" + std::to_string(i);
      const NodeId& b = pick(gen, targets);
      w.graph.add_node(a);
      if (inst.is_typed()) w.typing.nodes[a] = z->node_type(b);
      if (z->is_plus(b) && gen.below(4) != 0) w.polarity.plus.insert(a);
      if (z->is_minus(b) && gen.below(4) != 0) w.polarity.minus.insert(a);
      nodes[a] = b;
    }
  }
  EdgeMap edges;
  std::vector<EdgeId> z_edges;
  for (const auto& [e, ends] : z->graph.edges()) {
    (void)ends;
    z_edges.push_back(e);
  }
  const std::size_t tries = z_edges.empty() ? 0 : gen.below(gen.bounds().edges + 1);
  for (std::size_t i = 0; i < tries; ++i) {
    const EdgeId& e = pick(gen, z_edges);
    std::vector<NodeId> srcs, tgts;
    for (const auto& [a, b] : nodes) {
      if (b == z->graph.src(e) && (!inst.is_polarized() || w.is_plus(a))) srcs.push_back(a);
      if (b == z->graph.tgt(e) && (!inst.is_polarized() || w.is_minus(a))) tgts.push_back(a);
    }
    if (srcs.empty() || tgts.empty()) continue;
    EdgeId id = "we" + std::to_string(edges.size());
    w.graph.add_edge(id, pick(gen, srcs), pick(gen, tgts));
    if (inst.is_typed()) w.typing.edges[id] = z->edge_type(e);
    edges[id] = e;
  }
  return Morphism(make_object(std::move(w)), z, std::move(nodes), std::move(edges));
}

Outcome phi_decomp(Generator& gen, const CategoryInstance& inst) {
  Morphism m = gen.mono();
  Morphism f = gen.arrow_from(m.source_ref(), "y");
  auto tx = t_object(m.source_ref(), inst);
  auto ty = t_object(f.target_ref(), inst);
  Morphism classifying = phi(m, f, ty, inst);
  Morphism m_bar = phi(m, identity(m.source_ref()), tx, inst);
  Morphism composed = compose(t_morphism(f, tx, ty), m_bar);
  Evidence ev(inst);
  ev.arrow("m", m).arrow("f", f).arrow("phi", classifying).arrow("T(f)∘bar(m)", composed);
  if (!(composed == classifying)) return ev.fail("T(f)∘bar(m) differs from phi(m,f)");

  // Along any g: W -> Z, phi(m,f)∘g classifies the pulled back partial map.
  Morphism g = arrow_to(gen, m.target_ref(), inst);
  Pullback pb = pullback(m, g, inst);
  Morphism lhs = compose(classifying, g);
  Morphism rhs = phi(pb.p2, compose(f, pb.p1), ty, inst);
  ev.arrow("g", g).arrow("phi∘g", lhs).arrow("phi(g*m, f∘m*g)", rhs);
  if (!(lhs == rhs)) return ev.fail("phi is not stable under pullback along g");
  return Outcome::ok();
}

Outcome complement_t0(Generator& gen, const CategoryInstance& inst) {
  ObjectRef l = gen.graph("l");
  auto tl = t_object(l, inst);
  auto t0 = t_object(make_object(Object{}), inst);
  Complement c = strict_complement(tl.unit, inst);
  Evidence ev(inst);
  ev.arrow("eta_L", tl.unit).arrow("complement", c.inclusion);
  if (!iso_search(c.object, t0.total, inst)) {
    return ev.fail("T(L)∖L is not isomorphic to T(0)");
  }
  return Outcome::ok();
}

Outcome complement_tl_iso(Generator& gen, const CategoryInstance& inst) {
  Morphism l = gen.arrow_from(gen.graph("k"), "l");
  auto tk = t_object(l.source_ref(), inst);
  auto tl = t_object(l.target_ref(), inst);
  Morphism t_l = t_morphism(l, tk, tl);
  SquareComplement sc = complement_of_square(Square{l, tk.unit, tl.unit, t_l}, inst);
  Evidence ev(inst);
  ev.arrow("l", l).arrow("T(l)", t_l).arrow("T(l)∖l", sc.arrow);
  if (!is_iso(sc.arrow, inst)) return ev.fail("T(l)∖l is not an iso");
  return Outcome::ok();
}

Outcome locality(Generator& gen, const CategoryInstance& inst) {
  Rule rule = gen.local_rule();
  Morphism m = gen.mono_from(rule.L(), "g");
  Evidence ev(inst);
  ev.rule(rule).arrow("m", m);
  if (!is_local_rule(rule, inst)) return ev.fail("generated rule is not local");
  RewriteTrace trace = agree_step(rule, m, inst);
  ev.arrow("g", trace.g).arrow("n", trace.n);
  if (!is_local_step(trace, inst)) return ev.fail("step of a local rule is not local");
  return Outcome::ok();
}

// One preserved element, t = id, and a host with two more elements.
Outcome locality_negative_control(const CategoryInstance& inst) {
  Object k;
  k.graph.add_node("x");
  Object g;
  for (const char* n : {"x", "y", "z"}) g.graph.add_node(n);
  if (inst.is_typed()) {
    const NodeId& type = *inst.typegraph().nodes().begin();
    k.typing.nodes["x"] = type;
    for (const char* n : {"x", "y", "z"}) g.typing.nodes[n] = type;
  }
  ObjectRef kr = make_object(std::move(k));
  ObjectRef gr = make_object(std::move(g));
  Morphism id = identity(kr);
  Rule rule = make_agree_rule(id, id, id, inst);
  Morphism m(kr, gr, {{"x", "x"}}, {});
  Evidence ev(inst);
  ev.rule(rule).arrow("m", m);
  RewriteTrace trace = agree_step(rule, m, inst);
  ev.arrow("g", trace.g);
  if (!is_local_step(trace, inst)) {
    return ev.fail(std::string("step is not local (rule local: ") +
                   (is_local_rule(rule, inst) ? "true" : "false") + ")");
  }
  return Outcome::ok();
}

constexpr std::size_t kFpbcMaxItems = 8;

Outcome fpbc_final(Generator& gen, const CategoryInstance& inst) {
  Morphism l = gen.arrow_from(gen.graph("k"), "l");
  Morphism m = gen.mono_from(l.target_ref(), "g");
  if (m.target().graph.node_count() > 3 || l.source().graph.node_count() > 3) {
    return Outcome::resample();
  }
  Fpbc f = fpbc(l, m, inst);
  const Object& d = f.n.target();
  if (d.graph.size() + 1 > kFpbcMaxItems) return Outcome::resample();
  Evidence ev(inst);
  ev.arrow("l", l).arrow("m", m).arrow("n", f.n).arrow("a", f.a);
  FpbcVerdict verdict = fpbc_verify(l, m, f.n, f.a, inst);
  if (!verdict.ok) return ev.fail("fpbc output rejected: " + verdict.counterexample);

  // Mutation: D plus one isolated node, sent anywhere in G.
  const auto g_nodes = node_list(m.target());
  if (g_nodes.empty()) return Outcome::ok();
  Object mutated = d;
  NodeId extra = "extra";
  while (mutated.graph.has_node(extra)) extra += "'";
  mutated.graph.add_node(extra);
  const NodeId& image = pick(gen, g_nodes);
  if (inst.is_typed()) mutated.typing.nodes[extra] = m.target().node_type(image);
  ObjectRef dm = make_object(std::move(mutated));
  NodeMap a_nodes = f.a.node_map();
  a_nodes[extra] = image;
  Morphism a2(dm, f.a.target_ref(), std::move(a_nodes), f.a.edge_map());
  Morphism n2(f.n.source_ref(), dm, f.n.node_map(), f.n.edge_map());
  FpbcVerdict mutated_verdict = fpbc_verify(l, m, n2, a2, inst);
  if (mutated_verdict.ok) {
    ev.arrow("mutated n", n2).arrow("mutated a", a2);
    return ev.fail("mutated fpbc output with an extra node was accepted");
  }
  return Outcome::ok();
}

Outcome sqpo_agree(Generator& gen, const CategoryInstance& inst) {
  Rule rule = gen.span_rule();
  Morphism m = gen.mono_from(rule.L(), "g");
  Rule as_agree = make_agree_rule(rule.l, rule.r, t_object(rule.K(), inst).unit, inst);
  RewriteTrace agree = agree_step(as_agree, m, inst);
  RewriteTrace sqpo = sqpo_step(rule, m, inst);
  Evidence ev(inst);
  ev.rule(rule).arrow("m", m).arrow("h (agree)", agree.h).arrow("h (sqpo)", sqpo.h);
  if (!iso_over(agree.g, sqpo.g, inst)) return ev.fail("contexts D differ over G");
  if (!iso_search(agree.H(), sqpo.H(), inst)) return ev.fail("results H are not isomorphic");
  return Outcome::ok();
}

Outcome psqpo_agree(Generator& gen, const CategoryInstance& inst) {
  Rule rule = gen.psqpo_rule();
  Morphism m = gen.mono_from(rule.L(), "g");
  RewriteTrace polarized = psqpo_step(rule, m);
  RewriteTrace lifted = agree_step(lift(rule), m, inst);
  Evidence ev(inst);
  ev.rule(rule).arrow("m", m).arrow("h (psqpo)", polarized.h).arrow("h (agree)", lifted.h);
  if (!iso_over(polarized.g, lifted.g, inst)) return ev.fail("contexts D differ over G");
  if (!iso_search(polarized.H(), lifted.H(), inst)) {
    return ev.fail("PSqPO and lifted AGREE results are not isomorphic");
  }

  Polarity full;
  for (const auto& n : rule.K()->graph.nodes()) {
    full.plus.insert(n);
    full.minus.insert(n);
  }
  Rule everything = make_psqpo_rule(rule.l, rule.r, full);
  RewriteTrace a = psqpo_step(everything, m);
  RewriteTrace b = sqpo_step(make_sqpo_rule(rule.l, rule.r, inst), m, inst);
  ev.arrow("h (full polarity)", a.h).arrow("h (sqpo)", b.h);
  if (!iso_search(a.H(), b.H(), inst)) {
    return ev.fail("full-polarity PSqPO differs from SqPO");
  }
  return Outcome::ok();
}

Outcome counit_iso(Generator& gen, const CategoryInstance& inst) {
  Morphism l = gen.arrow_from(gen.graph("k"), "l");
  auto tk = t_object(l.source_ref(), inst);
  auto tl = t_object(l.target_ref(), inst);
  Morphism t_l = t_morphism(l, tk, tl);
  Pullback pb = pullback(tl.unit, t_l, inst);
  Morphism z = pullback_mediator(pb, l, tk.unit);
  Evidence ev(inst);
  ev.arrow("l", l).arrow("mediator", z);
  if (!is_iso(z, inst)) return ev.fail("pullback of T(l) along eta_L is not iso to l");

  Morphism m = gen.mono_from(l.target_ref(), "g");
  Fpbc f = fpbc(l, m, inst);
  Pullback back = pullback(m, f.a, inst);
  Morphism w = pullback_mediator(back, l, f.n);
  ev.arrow("m", m).arrow("a", f.a).arrow("fpbc mediator", w);
  if (!is_iso(w, inst)) return ev.fail("pullback of the fpbc along m is not iso to l");
  return Outcome::ok();
}

using Check = std::function<Outcome(Generator&, const CategoryInstance&)>;

Check check_for(LawId law) {
  switch (law) {
    case LawId::EtaCartesian: return eta_cartesian;
    case LawId::PhiUnique: return phi_unique;
    case LawId::PhiDecomp: return phi_decomp;
    case LawId::ComplementT0: return complement_t0;
    case LawId::ComplementTlIso: return complement_tl_iso;
    case LawId::Locality: return locality;
    case LawId::FpbcFinal: return fpbc_final;
    case LawId::SqpoAgree: return sqpo_agree;
    case LawId::PsqpoAgree: return psqpo_agree;
    case LawId::CounitIso: return counit_iso;
  }
  throw std::logic_error("unknown law");
}

Bounds effective_bounds(LawId law, Bounds b) {
  if (law == LawId::PhiUnique) b.nodes = std::min<std::size_t>(b.nodes, 3);
  if (law == LawId::FpbcFinal) b.nodes = std::min<std::size_t>(b.nodes, 3);
  return b;
}

std::vector<std::string> notes_for(LawId law) {
  switch (law) {
    case LawId::PhiUnique:
      return {"exhaustive uniqueness over all Z -> T(Y) commuting with the square",
              "|Z| <= 3 nodes, |Y| <= 2 nodes; larger draws resampled"};
    case LawId::FpbcFinal:
      return {"graphs <= 3 nodes",
              "finality checked over connected pullbacks of m with at most |D|+1 items",
              "draws with |D|+1 > " + std::to_string(kFpbcMaxItems) + " items resampled",
              "each instance also checks that D plus an isolated node is rejected"};
    case LawId::Locality:
      return {"T_K = K + T(0) + up to 3 extra edges touching K"};
    case LawId::PsqpoAgree:
      return {"also checks full-polarity PSqPO against SqPO"};
    case LawId::CounitIso:
      return {"also checks the pullback of the fpbc square along m"};
    default:
      return {};
  }
}

constexpr std::size_t kMaxResample = 200;

}  // namespace

LawReport run_law(LawId law, const LawConfig& config, const CategoryInstance& inst) {
  if (!applicable(law, inst)) {
    throw UsageError("law " + to_string(law) + " does not apply to category '" +
                     inst.name() + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  LawReport report;
  report.law = law;
  report.category = inst.name();
  report.seed = config.seed;
  report.bounds = effective_bounds(law, config.bounds);
  report.notes = notes_for(law);
  report.pass = true;
  const std::size_t count = config.instances ? config.instances : default_instances(law);
  const Check check = check_for(law);

  for (std::size_t i = 0; i < count && report.pass; ++i) {
    const std::uint64_t seed = mix(config.seed, i);
    Outcome outcome;
    std::uint64_t used_seed = seed;
    try {
      if (law == LawId::Locality && config.inject_nonlocal && i == 0) {
        outcome = locality_negative_control(inst);
      } else {
        for (std::size_t attempt = 0; attempt < kMaxResample; ++attempt) {
          used_seed = attempt == 0 ? seed : mix(seed, attempt);
          Generator gen(used_seed, report.bounds, inst);
          outcome = check(gen, inst);
          if (outcome.kind != Outcome::Kind::Resample) break;
          ++report.resampled;
        }
        if (outcome.kind == Outcome::Kind::Resample) {
          outcome = Outcome{Outcome::Kind::Fail,
                            {{"reason", "no draw within the law's limits"}}};
        }
      }
    } catch (const std::exception& e) {
      outcome = Outcome{Outcome::Kind::Fail,
                        {{"reason", std::string("exception: ") + e.what()}}};
    }
    report.instances = i + 1;
    if (outcome.kind == Outcome::Kind::Fail) {
      report.pass = false;
      json cex = std::move(outcome.detail);
      cex["instance"] = i;
      cex["seed"] = used_seed;
      report.counterexample = std::move(cex);
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json to_json(const LawReport& report) {
  json out = {{"law", to_string(report.law)},
              {"category", report.category},
              {"seed", report.seed},
              {"bounds", {{"nodes", report.bounds.nodes}, {"edges", report.bounds.edges}}},
              {"instances", report.instances},
              {"resampled", report.resampled},
              {"pass", report.pass},
              {"notes", report.notes}};
  if (report.counterexample) out["counterexample"] = *report.counterexample;
  return out;
}

std::string summary_line(const LawReport& report) {
  std::ostringstream out;
  out << (report.pass ? "PASS " : "FAIL ") << to_string(report.law) << ' '
      << report.category << " seed=" << report.seed << " nodes<=" << report.bounds.nodes
      << " edges<=" << report.bounds.edges << " instances=" << report.instances;
  if (report.resampled) out << " resampled=" << report.resampled;
  out << " (" << std::fixed << std::setprecision(2) << report.seconds << " s)";
  return out.str();
}

}  // namespace agree::laws
