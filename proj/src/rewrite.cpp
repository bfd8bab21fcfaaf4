#include "agree/rewrite.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "agree/error.hpp"

namespace agree {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Agree: return "agree";
    case Mode::Sqpo: return "sqpo";
    case Mode::Psqpo: return "psqpo";
  }
  return "agree";
}

Mode parse_mode(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "agree") return Mode::Agree;
  if (lower == "sqpo") return Mode::Sqpo;
  if (lower == "psqpo") return Mode::Psqpo;
  throw UsageError("unknown rule mode '" + text + "'");
}

// ---------------------------------------------------------------------------
// Rules

namespace {

void check_span(const Morphism& l, const Morphism& r, const Morphism* t,
                const CategoryInstance& inst) {
  auto require = [&](const Morphism& f, const char* name) {
    auto report = validate_morphism(f, inst);
    if (!report.valid) {
      std::string why = report.structural_error ? *report.structural_error : "";
      for (const auto& v : report.violations) why += (why.empty() ? "" : "; ") + v;
      throw RuleError(std::string("rule arrow ") + name + " is invalid: " + why);
    }
  };
  require(l, "l");
  require(r, "r");
  if (!same_object(l.source_ref(), r.source_ref())) {
    throw RuleError("rule arrows l and r have different sources");
  }
  if (t != nullptr) {
    require(*t, "t");
    if (!same_object(l.source_ref(), t->source_ref())) {
      throw RuleError("rule arrows l and t have different sources");
    }
    if (!in_mono_class(*t, inst)) {
      throw RuleError("rule embedding t is not a mono in M");
    }
  }
}

}  // namespace

Rule make_agree_rule(Morphism l, Morphism r, Morphism t,
                     const CategoryInstance& inst) {
  check_span(l, r, &t, inst);
  return Rule{std::move(l), std::move(r), std::move(t), Mode::Agree, std::nullopt};
}

Rule make_sqpo_rule(Morphism l, Morphism r, const CategoryInstance& inst) {
  check_span(l, r, nullptr, inst);
  Morphism t = t_object(l.source_ref(), inst).unit;
  return Rule{std::move(l), std::move(r), std::move(t), Mode::Sqpo, std::nullopt};
}

Rule make_psqpo_rule(Morphism l, Morphism r, Polarity k_polarity) {
  const auto gr = CategoryInstance::gr();
  check_span(l, r, nullptr, gr);
  Object k_hat = l.source();
  k_hat.polarity = k_polarity;
  auto problems = object_violations(k_hat, CategoryInstance::grpol());
  if (!problems.empty()) {
    std::string why;
    for (const auto& p : problems) why += (why.empty() ? "" : "; ") + p;
    throw RuleError("rule interface polarity is invalid: " + why);
  }
  auto tk = t_object(make_object(std::move(k_hat)), CategoryInstance::grpol());
  Morphism unit = pol_forget(tk.unit);
  Morphism t(l.source_ref(), unit.target_ref(), unit.node_map(), unit.edge_map());
  return Rule{std::move(l), std::move(r), std::move(t), Mode::Psqpo,
              std::move(k_polarity)};
}

ObjectRef polarized_interface(const Rule& rule) {
  if (!rule.k_polarity) throw RuleError("rule has no interface polarity");
  Object k_hat = rule.l.source();
  k_hat.polarity = *rule.k_polarity;
  return make_object(std::move(k_hat));
}

Rule lift(const Rule& rule) {
  Rule out = rule;
  out.mode = Mode::Agree;
  out.k_polarity.reset();
  return out;
}

// ---------------------------------------------------------------------------
// Steps

std::vector<Morphism> enumerate_matches(const ObjectRef& l, const ObjectRef& g,
                                        const CategoryInstance& inst) {
  SearchOptions options;
  options.mono_in_M = true;
  return all_morphisms(l, g, inst, options);
}

namespace {

void require_match(const Rule& rule, const Morphism& m,
                   const CategoryInstance& inst) {
  if (!same_object(m.source_ref(), rule.L())) {
    throw UsageError("match source is not the left-hand side of the rule");
  }
  auto report = validate_morphism(m, inst);
  if (!report.valid) {
    throw PreconditionError("match is not a valid morphism: " + describe(m));
  }
  if (!report.is_mono_in_M) {
    throw PreconditionError("match is not a mono in M: " + describe(m));
  }
}

void require_pushout_instance(const CategoryInstance& inst) {
  if (inst.is_polarized()) {
    throw UsageError("rewrite steps run in 'gr' or 'typed'; use PSqPO for polarized rules");
  }
}

void assert_trace(const RewriteTrace& trace, const CategoryInstance& inst) {
  auto problems = trace_violations(trace, inst);
  if (!problems.empty()) {
    throw std::logic_error("rewrite trace invariant broken: " + problems.front());
  }
}

}  // namespace

RewriteTrace agree_step(const Rule& rule, const Morphism& m,
                        const CategoryInstance& inst) {
  require_pushout_instance(inst);
  if (!in_mono_class(rule.t, inst)) {
    throw RuleError("rule embedding t is not a mono in M");
  }
  require_match(rule, m, inst);

  ClassifiedObject tl = t_object(rule.L(), inst);
  Morphism l_prime = phi(rule.t, rule.l, tl, inst);
  Morphism m_bar = phi(m, identity(rule.L()), tl, inst);
  Pullback pb = pullback(m_bar, l_prime, inst);
  Morphism n = pullback_mediator(pb, compose(m, rule.l), rule.t);
  Pushout po = pushout_along_mono(n, rule.r, inst);

  RewriteTrace trace{rule,     m,    std::move(l_prime), std::move(m_bar),
                     pb.p2,    pb.p1, std::move(n),      po.h,
                     po.p,     std::nullopt};
  assert_trace(trace, inst);
  return trace;
}

Fpbc fpbc(const Morphism& l, const Morphism& m, const CategoryInstance& inst) {
  if (!same_object(l.target_ref(), m.source_ref())) {
    throw UsageError("fpbc: l does not end where m starts");
  }
  if (!in_mono_class(m, inst)) {
    throw PreconditionError("fpbc: m is not a mono in M");
  }
  ClassifiedObject tk = t_object(l.source_ref(), inst);
  ClassifiedObject tl = t_object(l.target_ref(), inst);
  Morphism bar_m = phi(m, identity(l.target_ref()), tl, inst);
  Morphism t_l = t_morphism(l, tk, tl);
  Pullback pb = pullback(bar_m, t_l, inst);
  Morphism n = pullback_mediator(pb, compose(m, l), tk.unit);
  return Fpbc{std::move(n), pb.p1, std::move(bar_m), std::move(t_l), pb.p2};
}

RewriteTrace sqpo_step(const Rule& rule, const Morphism& m,
                       const CategoryInstance& inst) {
  require_pushout_instance(inst);
  require_match(rule, m, inst);
  Fpbc f = fpbc(rule.l, m, inst);
  Pushout po = pushout_along_mono(f.n, rule.r, inst);
  Rule sqpo = rule;
  if (sqpo.mode != Mode::Sqpo) {
    sqpo.t = t_object(rule.K(), inst).unit;
    sqpo.mode = Mode::Sqpo;
    sqpo.k_polarity.reset();
  }
  RewriteTrace trace{std::move(sqpo), m,   f.t_l, f.bar_m, f.n_prime,
                     f.a,             f.n, po.h,  po.p,    std::nullopt};
  assert_trace(trace, inst);
  return trace;
}

RewriteTrace psqpo_step(const Rule& rule, const Morphism& m) {
  const auto gr = CategoryInstance::gr();
  const auto pol = CategoryInstance::grpol();
  if (rule.mode != Mode::Psqpo || !rule.k_polarity) {
    throw RuleError("PSqPO step needs a rule with interface polarity");
  }
  require_match(rule, m, gr);

  ObjectRef k_hat = polarized_interface(rule);
  Morphism pol_m = pol_induce(m);
  Morphism l_hat(k_hat, pol_m.source_ref(), rule.l.node_map(), rule.l.edge_map());
  Fpbc f = fpbc(l_hat, pol_m, pol);

  Morphism n_gr = pol_forget(f.n);
  Morphism g_gr = pol_forget(f.a);
  // Re-anchor on the exact rule and match objects.
  Morphism n(rule.K(), n_gr.target_ref(), n_gr.node_map(), n_gr.edge_map());
  Morphism g(n_gr.target_ref(), m.target_ref(), g_gr.node_map(), g_gr.edge_map());
  Pushout po = pushout_along_mono(n, rule.r, gr);

  RewriteTrace trace{rule,   m, f.t_l, f.bar_m, f.n_prime, std::move(g), std::move(n),
                     po.h,   po.p,
                     PolarizedPhase{std::move(l_hat), std::move(pol_m), f.n, f.a}};
  assert_trace(trace, gr);
  return trace;
}

RewriteTrace apply_rule(const Rule& rule, const Morphism& m,
                        const CategoryInstance& inst) {
  switch (rule.mode) {
    case Mode::Agree: return agree_step(rule, m, inst);
    case Mode::Sqpo: return sqpo_step(rule, m, inst);
    case Mode::Psqpo:
      if (inst.kind() != Kind::Gr) {
        throw UsageError("PSqPO rules are applied to plain graphs");
      }
      return psqpo_step(rule, m);
  }
  throw std::logic_error("unknown rule mode");
}

std::vector<std::string> trace_violations(const RewriteTrace& trace,
                                          const CategoryInstance& inst) {
  std::vector<std::string> out;
  auto maps_equal = [](const Morphism& a, const Morphism& b) {
    return a.node_map() == b.node_map() && a.edge_map() == b.edge_map();
  };
  const Rule& rule = trace.rule;

  if (trace.polarized) {
    const auto pol = CategoryInstance::grpol();
    const PolarizedPhase& ph = *trace.polarized;
    // n' ∘ n̂ is the unit, which is the identity on items.
    Morphism id = identity(ph.n.source_ref());
    if (!maps_equal(compose(trace.n_prime, ph.n), id)) out.push_back("n' . n != unit");
    if (!in_mono_class(ph.n, pol)) out.push_back("polarized n is not a strict mono");
    Square sq{ph.l, ph.n, ph.m, ph.g};
    if (!commutes(sq)) {
      out.push_back("polarized left square does not commute");
    } else if (!is_pullback_square(sq, pol)) {
      out.push_back("polarized left square is not a pullback");
    }
  } else if (!maps_equal(compose(trace.n_prime, trace.n), rule.t)) {
    out.push_back("n' . n != t");
  }

  if (!maps_equal(compose(trace.g, trace.n), compose(trace.m, rule.l))) {
    out.push_back("g . n != m . l");
  } else {
    Square sq{rule.l, trace.n, trace.m, trace.g};
    if (!commutes(sq) || !is_pullback_square(sq, inst)) {
      out.push_back("left square (l, n, m, g) is not a pullback");
    }
  }
  if (!in_mono_class(trace.n, inst)) out.push_back("n is not a mono in M");
  if (!maps_equal(compose(trace.h, trace.n), compose(trace.p, rule.r))) {
    out.push_back("h . n != p . r");
  }
  return out;
}

// ---------------------------------------------------------------------------
// FPBC verification

namespace {

// Candidate pullbacks (D', f) of m are built over integer indices: D' nodes
// carry a G node and a polarity, D' edges a pair of D' nodes and a G edge.
// Since m is a mono, the pullback K' of m along f is f^-1(m(L)) with d = f
// and e the inclusion.
class FinalityCheck {
 public:
  FinalityCheck(const Morphism& l, const Morphism& m, const Morphism& n,
                const Morphism& a, const CategoryInstance& inst, std::size_t bound)
      : inst_(inst), bound_(bound) {
    const Object& g = m.target();
    std::map<NodeId, int> g_node;
    for (const auto& x : g.graph.nodes()) {
      g_node[x] = static_cast<int>(g_nodes_.size());
      g_nodes_.push_back(x);
    }
    std::map<EdgeId, int> g_edge;
    for (const auto& [e, ends] : g.graph.edges()) {
      g_edge[e] = static_cast<int>(g_edges_.size());
      g_edges_.push_back(e);
      g_ends_.push_back({g_node.at(ends.src), g_node.at(ends.tgt)});
    }
    in_l_node_.assign(g_nodes_.size(), false);
    for (const auto& [x, y] : m.node_map()) in_l_node_[g_node.at(y)] = true;
    in_l_edge_.assign(g_edges_.size(), false);
    for (const auto& [x, y] : m.edge_map()) in_l_edge_[g_edge.at(y)] = true;

    // K, with nodes and edges listed over their image in G.
    const Object& k = l.source();
    std::map<NodeId, int> k_node;
    k_over_.assign(g_nodes_.size(), {});
    for (const auto& x : k.graph.nodes()) {
      const int i = static_cast<int>(k_nodes_.size());
      k_node[x] = i;
      k_nodes_.push_back({k.is_plus(x), k.is_minus(x)});
      k_over_[g_node.at(m.node(l.node(x)))].push_back(i);
    }
    std::map<EdgeId, int> k_edge;
    ke_over_.assign(g_edges_.size(), {});
    for (const auto& [e, ends] : k.graph.edges()) {
      const int i = static_cast<int>(k_ends_.size());
      k_edge[e] = i;
      k_ends_.push_back({k_node.at(ends.src), k_node.at(ends.tgt)});
      ke_over_[g_edge.at(m.edge(l.edge(e)))].push_back(i);
    }

    // D over G along a, and n into D.
    const Object& d = a.source();
    std::map<NodeId, int> d_node;
    d_over_.assign(g_nodes_.size(), {});
    for (const auto& x : d.graph.nodes()) {
      const int i = static_cast<int>(d_nodes_.size());
      d_node[x] = i;
      d_nodes_.push_back({d.is_plus(x), d.is_minus(x)});
      d_over_[g_node.at(a.node(x))].push_back(i);
    }
    std::map<EdgeId, int> d_edge;
    de_over_.assign(g_edges_.size(), {});
    for (const auto& [e, ends] : d.graph.edges()) {
      const int i = static_cast<int>(d_ends_.size());
      d_edge[e] = i;
      d_ends_.push_back({d_node.at(ends.src), d_node.at(ends.tgt)});
      de_over_[g_edge.at(a.edge(e))].push_back(i);
    }
    for (const auto& x : k.graph.nodes()) n_node_.push_back(d_node.at(n.node(x)));
    for (const auto& [e, ends] : k.graph.edges()) {
      (void)ends;
      n_edge_.push_back(d_edge.at(n.edge(e)));
    }

    for (int x = 0; x < static_cast<int>(g_nodes_.size()); ++x) {
      if (!inst.is_polarized()) {
        labels_.push_back({x, false, false});
        continue;
      }
      for (int mask = 0; mask < 4; ++mask) {
        const bool p = mask & 1, q = mask & 2;
        if ((p && !g.is_plus(g_nodes_[x])) || (q && !g.is_minus(g_nodes_[x]))) continue;
        labels_.push_back({x, p, q});
      }
    }
  }

  /// Empty when every candidate passes.
  std::string run() {
    for (std::size_t k = 1; k <= bound_ && failure_.empty(); ++k) {
      nodes_.clear();
      choose_nodes(0, k);
    }
    return failure_;
  }

  std::size_t checked() const { return checked_; }

 private:
  struct Label {
    int node;
    bool plus;
    bool minus;
  };
  struct Pol {
    bool plus;
    bool minus;
  };
  struct Ends {
    int src;
    int tgt;
  };
  struct Slot {
    int src;
    int tgt;
    int edge;
  };

  static bool covers(const Pol& target, bool plus, bool minus) {
    return (!plus || target.plus) && (!minus || target.minus);
  }

  void choose_nodes(std::size_t from, std::size_t k) {
    if (!failure_.empty()) return;
    if (nodes_.size() == k) {
      slots_.clear();
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          const Label& s = labels_[nodes_[i]];
          const Label& t = labels_[nodes_[j]];
          if (inst_.is_polarized() && !(s.plus && t.minus)) continue;
          for (std::size_t e = 0; e < g_edges_.size(); ++e) {
            if (g_ends_[e].src == s.node && g_ends_[e].tgt == t.node) {
              slots_.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(e)});
            }
          }
        }
      }
      edges_.clear();
      choose_edges(0, bound_ - k);
      return;
    }
    for (std::size_t i = from; i < labels_.size(); ++i) {
      nodes_.push_back(i);
      choose_nodes(i, k);
      nodes_.pop_back();
      if (!failure_.empty()) return;
    }
  }

  void choose_edges(std::size_t from, std::size_t budget) {
    if (!failure_.empty()) return;
    if (connected()) check();
    if (budget == 0) return;
    for (std::size_t i = from; i < slots_.size(); ++i) {
      edges_.push_back(i);
      choose_edges(i, budget - 1);
      edges_.pop_back();
      if (!failure_.empty()) return;
    }
  }

  bool connected() const {
    const std::size_t k = nodes_.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto i : edges_) parent[find(slots_[i].src)] = find(slots_[i].tgt);
    for (std::size_t i = 1; i < k; ++i) {
      if (find(i) != find(0)) return false;
    }
    return true;
  }

  const Label& label(int i) const { return labels_[nodes_[i]]; }
  const Slot& slot(std::size_t e) const { return slots_[edges_[e]]; }

  // Every h: K' -> K with l∘h = d, then the mediators for it.
  void check() {
    const int k = static_cast<int>(nodes_.size());
    h_node_.assign(k, -1);
    h_edge_.assign(edges_.size(), -1);
    assign_h_node(0);
  }

  void assign_h_node(int i) {
    if (!failure_.empty()) return;
    if (i == static_cast<int>(nodes_.size())) {
      assign_h_edge(0);
      return;
    }
    const Label& x = label(i);
    if (!in_l_node_[x.node]) {
      assign_h_node(i + 1);
      return;
    }
    for (int c : k_over_[x.node]) {
      if (!covers(k_nodes_[c], x.plus, x.minus)) continue;
      h_node_[i] = c;
      assign_h_node(i + 1);
      if (!failure_.empty()) return;
    }
    h_node_[i] = -1;
  }

  void assign_h_edge(std::size_t e) {
    if (!failure_.empty()) return;
    if (e == edges_.size()) {
      ++checked_;
      const std::size_t count = count_mediators();
      if (count != 1) fail(count);
      return;
    }
    const Slot& s = slot(e);
    if (!in_l_edge_[s.edge]) {
      assign_h_edge(e + 1);
      return;
    }
    for (int c : ke_over_[s.edge]) {
      if (k_ends_[c].src != h_node_[s.src] || k_ends_[c].tgt != h_node_[s.tgt]) continue;
      h_edge_[e] = c;
      assign_h_edge(e + 1);
      if (!failure_.empty()) return;
    }
    h_edge_[e] = -1;
  }

  // Number of g: D' -> D with a∘g = f and g∘e = n∘h, capped at 2.
  std::size_t count_mediators() {
    g_node_.assign(nodes_.size(), -1);
    std::size_t total = 0;
    count_from(0, total);
    return total;
  }

  void count_from(int i, std::size_t& total) {
    if (total >= 2) return;
    if (i == static_cast<int>(nodes_.size())) {
      std::size_t ways = 1;
      for (std::size_t e = 0; e < edges_.size() && ways; ++e) {
        const Slot& s = slot(e);
        const int gs = g_node_[s.src], gt = g_node_[s.tgt];
        if (h_edge_[e] >= 0) {
          const Ends& de = d_ends_[n_edge_[h_edge_[e]]];
          ways *= (de.src == gs && de.tgt == gt) ? 1 : 0;
          continue;
        }
        std::size_t options = 0;
        for (int c : de_over_[s.edge]) {
          if (d_ends_[c].src == gs && d_ends_[c].tgt == gt) ++options;
        }
        ways *= options;
      }
      total += ways;
      return;
    }
    const Label& x = label(i);
    if (h_node_[i] >= 0) {
      const int y = n_node_[h_node_[i]];
      if (!covers(d_nodes_[y], x.plus, x.minus)) return;
      g_node_[i] = y;
      count_from(i + 1, total);
      return;
    }
    for (int y : d_over_[x.node]) {
      if (!covers(d_nodes_[y], x.plus, x.minus)) continue;
      g_node_[i] = y;
      count_from(i + 1, total);
      if (total >= 2) return;
    }
  }

  void fail(std::size_t count) {
    std::ostringstream why;
    why << (count == 0 ? "no" : "several") << " mediating arrows for D' = {nodes:[";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Label& x = label(static_cast<int>(i));
      why << (i ? "," : "") << "x" << i << "->" << g_nodes_[x.node];
      if (x.plus || x.minus) why << (x.plus ? "+" : "") << (x.minus ? "-" : "");
    }
    why << "] edges:[";
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Slot& s = slot(e);
      why << (e ? "," : "") << "y" << e << "=x" << s.src << "->x" << s.tgt << "->"
          << g_edges_[s.edge];
    }
    why << "]}";
    failure_ = why.str();
  }

  const CategoryInstance& inst_;
  std::size_t bound_;

  std::vector<NodeId> g_nodes_;
  std::vector<EdgeId> g_edges_;
  std::vector<Ends> g_ends_;
  std::vector<bool> in_l_node_;
  std::vector<bool> in_l_edge_;

  std::vector<Pol> k_nodes_;
  std::vector<Ends> k_ends_;
  std::vector<std::vector<int>> k_over_;
  std::vector<std::vector<int>> ke_over_;

  std::vector<Pol> d_nodes_;
  std::vector<Ends> d_ends_;
  std::vector<std::vector<int>> d_over_;
  std::vector<std::vector<int>> de_over_;
  std::vector<int> n_node_;
  std::vector<int> n_edge_;

  std::vector<Label> labels_;
  std::vector<std::size_t> nodes_;
  std::vector<Slot> slots_;
  std::vector<std::size_t> edges_;
  std::vector<int> h_node_;
  std::vector<int> h_edge_;
  std::vector<int> g_node_;

  std::size_t checked_ = 0;
  std::string failure_;
};

}  // namespace

FpbcVerdict fpbc_verify(const Morphism& l, const Morphism& m, const Morphism& n,
                        const Morphism& a, const CategoryInstance& inst,
                        std::optional<std::size_t> bound) {
  FpbcVerdict verdict;
  verdict.bound = bound.value_or(a.source().graph.size() + 1);
  Square sq{l, n, m, a};
  if (!commutes(sq)) {
    verdict.counterexample = "square does not commute";
    return verdict;
  }
  if (!in_mono_class(m, inst)) {
    verdict.counterexample = "m is not a mono in M";
    return verdict;
  }
  if (!is_pullback_square(sq, inst)) {
    verdict.counterexample = "square is not a pullback";
    return verdict;
  }
  FinalityCheck check(l, m, n, a, inst, verdict.bound);
  verdict.counterexample = check.run();
  verdict.squares_checked = check.checked();
  verdict.ok = verdict.counterexample.empty();
  return verdict;
}

// ---------------------------------------------------------------------------
// Complements and locality

namespace {

Complement direct_complement(const Morphism& m) {
  const Object& g = m.target();
  std::set<NodeId> hit_nodes;
  std::set<EdgeId> hit_edges;
  for (const auto& [x, y] : m.node_map()) hit_nodes.insert(y);
  for (const auto& [x, y] : m.edge_map()) hit_edges.insert(y);

  Object c;
  NodeMap nodes;
  EdgeMap edges;
  for (const auto& x : g.graph.nodes()) {
    if (hit_nodes.contains(x)) continue;
    c.graph.add_node(x);
    nodes.emplace(x, x);
    if (auto it = g.typing.nodes.find(x); it != g.typing.nodes.end()) {
      c.typing.nodes.emplace(x, it->second);
    }
    if (g.is_plus(x)) c.polarity.plus.insert(x);
    if (g.is_minus(x)) c.polarity.minus.insert(x);
  }
  for (const auto& [e, ends] : g.graph.edges()) {
    if (hit_edges.contains(e) || hit_nodes.contains(ends.src) ||
        hit_nodes.contains(ends.tgt)) {
      continue;
    }
    c.graph.add_edge(e, ends.src, ends.tgt);
    edges.emplace(e, e);
    if (auto it = g.typing.edges.find(e); it != g.typing.edges.end()) {
      c.typing.edges.emplace(e, it->second);
    }
  }
  ObjectRef obj = make_object(std::move(c));
  return Complement{obj, Morphism(obj, m.target_ref(), std::move(nodes), std::move(edges))};
}

}  // namespace

Complement strict_complement_by_classifier(const Morphism& m,
                                           const CategoryInstance& inst) {
  Characteristic ch = characteristic(m, inst);
  Pullback pb = pullback(ch.chi, ch.false_pt, inst);
  return Complement{pb.object, pb.p1};
}

Complement strict_complement(const Morphism& m, const CategoryInstance& inst) {
  if (!in_mono_class(m, inst)) {
    throw PreconditionError("strict complement of an arrow that is not a mono in M");
  }
  Complement direct = direct_complement(m);
  Complement by_classifier = strict_complement_by_classifier(m, inst);
  if (!iso_over(by_classifier.inclusion, direct.inclusion, inst)) {
    throw std::logic_error("strict complement constructions disagree for " + describe(m));
  }
  return direct;
}

SquareComplement complement_of_square(const Square& sq, const CategoryInstance& inst) {
  if (!commutes(sq)) throw PreconditionError("complement of a non-commuting square");
  if (!in_mono_class(sq.left, inst) || !in_mono_class(sq.right, inst)) {
    throw PreconditionError("complement of a square whose sides are not monos in M");
  }
  if (!is_pullback_square(sq, inst)) {
    throw PreconditionError("complement of a square that is not a pullback");
  }
  Complement left = strict_complement(sq.left, inst);
  Complement right = strict_complement(sq.right, inst);
  NodeMap nodes;
  EdgeMap edges;
  for (const auto& x : left.object->graph.nodes()) {
    const NodeId& y = sq.bottom.node(x);
    if (!right.object->graph.has_node(y)) {
      throw std::logic_error("complement arrow leaves the complement at node " + x);
    }
    nodes.emplace(x, y);
  }
  for (const auto& [e, ends] : left.object->graph.edges()) {
    const EdgeId& y = sq.bottom.edge(e);
    if (!right.object->graph.has_edge(y)) {
      throw std::logic_error("complement arrow leaves the complement at edge " + e);
    }
    edges.emplace(e, y);
  }
  Morphism arrow(left.object, right.object, std::move(nodes), std::move(edges));
  return SquareComplement{std::move(left), std::move(right), std::move(arrow)};
}

namespace {

bool is_iso_in(const Morphism& f, const CategoryInstance& inst) {
  return validate_morphism(f, inst).is_iso;
}

}  // namespace

bool is_local_rule(const Rule& rule, const CategoryInstance& inst) {
  ClassifiedObject tk = t_object(rule.K(), inst);
  Morphism t_bar = phi(rule.t, identity(rule.K()), tk, inst);
  Square sq{identity(rule.K()), rule.t, tk.unit, t_bar};
  return is_iso_in(complement_of_square(sq, inst).arrow, inst);
}

bool is_local_step(const RewriteTrace& trace, const CategoryInstance& inst) {
  Square sq{trace.rule.l, trace.n, trace.m, trace.g};
  return is_iso_in(complement_of_square(sq, inst).arrow, inst);
}

}  // namespace agree
