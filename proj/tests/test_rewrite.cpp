#include <gtest/gtest.h>

#include "agree/error.hpp"
#include "agree/rewrite.hpp"
#include "oracles.hpp"
#include "random_graphs.hpp"

using namespace agree;
using oracle::arrow;
using oracle::obj;

namespace {

const CategoryInstance kGr = CategoryInstance::gr();

/// G = a -> v -> b, with the match on v.
struct PathHost {
  ObjectRef g = obj({"a", "v", "b"}, {{"av", "a", "v"}, {"vb", "v", "b"}});
  ObjectRef l = obj({"v"});
  Morphism m = arrow(l, g, {{"v", "v"}});

  /// Interface with the original k0 and the copy k1, both sent to v.
  ObjectRef k2 = obj({"k0", "k1"});
  Morphism l2 = arrow(k2, l, {{"k0", "v"}, {"k1", "v"}});
};

std::set<Endpoints> edge_set(const Object& x) {
  std::set<Endpoints> out;
  for (const auto& [e, ends] : x.graph.edges()) out.insert(ends);
  return out;
}

ObjectRef random_object(rnd::Source& s, const CategoryInstance& inst, std::size_t nodes,
                        std::size_t edges, const std::string& prefix) {
  if (inst.is_typed()) {
    return make_object(rnd::typed_graph(s, inst.typegraph(), nodes, edges, prefix));
  }
  return make_object(rnd::graph(s, nodes, edges, prefix));
}

std::optional<Morphism> random_mono(rnd::Source& s, const ObjectRef& x,
                                    const ObjectRef& y, const CategoryInstance& inst) {
  auto all = enumerate_matches(x, y, inst);
  if (all.empty()) return std::nullopt;
  return all[s.below(all.size())];
}

}  // namespace

TEST(Matches, Counting) {
  auto g3 = obj({"x", "y", "z"});
  EXPECT_EQ(enumerate_matches(obj({"a"}), g3, kGr).size(), 3u);
  auto tri = obj({"x", "y", "z"}, {{"xy", "x", "y"}, {"yz", "y", "z"}, {"zx", "z", "x"}});
  EXPECT_EQ(enumerate_matches(obj({"a", "b"}, {{"e", "a", "b"}}), tri, kGr).size(), 3u);
  EXPECT_TRUE(enumerate_matches(obj({"a", "b", "c", "d"}), g3, kGr).empty());
  // Deterministic order: lexicographic in the assignments.
  auto ms = enumerate_matches(obj({"a"}), g3, kGr);
  EXPECT_EQ(ms[0].node("a"), "x");
  EXPECT_EQ(ms[2].node("a"), "z");
}

TEST(Fpbc, IdentityGivesIsoCopy) {
  PathHost f;
  auto out = fpbc(identity(f.l), f.m, kGr);
  EXPECT_TRUE(validate_morphism(out.a, kGr).is_iso);
}

TEST(Fpbc, NodeDeletionRemovesIncidentEdges) {
  PathHost f;
  auto out = fpbc(zero(f.l, kGr), f.m, kGr);
  const Object& d = out.a.source();
  EXPECT_EQ(d.graph.node_count(), 2u);
  EXPECT_EQ(d.graph.edge_count(), 0u);
  std::set<NodeId> images;
  for (const auto& [x, y] : out.a.node_map()) images.insert(y);
  EXPECT_EQ(images, (std::set<NodeId>{"a", "b"}));
}

TEST(Fpbc, CloneCopiesAllEdges) {
  PathHost f;
  auto out = fpbc(f.l2, f.m, kGr);
  const Object& d = out.a.source();
  const NodeId& k0 = out.n.node("k0");
  const NodeId& k1 = out.n.node("k1");
  NodeId a, b;
  for (const auto& [x, y] : out.a.node_map()) {
    if (y == "a") a = x;
    if (y == "b") b = x;
  }
  EXPECT_EQ(d.graph.node_count(), 4u);
  EXPECT_EQ(edge_set(d), (std::set<Endpoints>{{a, k0}, {a, k1}, {k0, b}, {k1, b}}));
}

TEST(Fpbc, VerifiedAndMutationFails) {
  PathHost f;
  for (const auto& l : {identity(f.l), zero(f.l, kGr), f.l2}) {
    auto out = fpbc(l, f.m, kGr);
    auto verdict = fpbc_verify(l, f.m, out.n, out.a, kGr);
    EXPECT_TRUE(verdict.ok) << verdict.counterexample;
    EXPECT_EQ(verdict.bound, out.a.source().graph.size() + 1);
    EXPECT_GT(verdict.squares_checked, 0u);

    // Append an isolated node over a node outside the match.
    Object bigger = out.a.source();
    bigger.graph.add_node("extra");
    auto dd = make_object(bigger);
    auto an = out.a.node_map();
    an["extra"] = "a";
    Morphism a2(dd, out.a.target_ref(), an, out.a.edge_map());
    Morphism n2(out.n.source_ref(), dd, out.n.node_map(), out.n.edge_map());
    EXPECT_FALSE(fpbc_verify(l, f.m, n2, a2, kGr).ok);

    // Same, over the matched node: the square stops being a pullback.
    an["extra"] = "v";
    Morphism a3(dd, out.a.target_ref(), an, out.a.edge_map());
    EXPECT_FALSE(fpbc_verify(l, f.m, n2, a3, kGr).ok);
  }
}

TEST(Fpbc, EmptyInterfaceGivesStrictComplement) {
  rnd::Source s(4);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    auto g = random_object(s, kGr, 4, 5, "g");
    auto l = random_object(s, kGr, 2, 2, "l");
    auto m = random_mono(s, l, g, kGr);
    if (!m) continue;
    auto out = fpbc(zero(l, kGr), *m, kGr);
    auto c = strict_complement(*m, kGr);
    EXPECT_TRUE(iso_over(out.a, c.inclusion, kGr).has_value());
    ++checked;
  }
  EXPECT_EQ(checked, 40);
}

TEST(Fpbc, RejectsNonMonoMatch) {
  auto l = obj({"a", "b"});
  auto g = obj({"c"});
  EXPECT_THROW(fpbc(identity(l), arrow(l, g, {{"a", "c"}, {"b", "c"}}), kGr),
               PreconditionError);
}

TEST(Fpbc, UniqueUpToIsoOverBothLegs) {
  PathHost f;
  auto one = fpbc(f.l2, f.m, kGr);
  auto two = fpbc(f.l2, f.m, kGr);
  auto u = iso_over(one.a, two.a, kGr);
  ASSERT_TRUE(u);
  EXPECT_EQ(compose(*u, one.n), two.n);
}

TEST(Sqpo, DeleteAndCloneOnPath) {
  PathHost f;
  auto empty = make_object(Graph{});
  auto rho1 = make_sqpo_rule(zero(f.l, kGr), identity(empty), kGr);
  auto h1 = sqpo_step(rho1, f.m, kGr);
  EXPECT_TRUE(iso_search(h1.H(), obj({"a", "b"}), kGr));

  auto rho2 = make_sqpo_rule(f.l2, identity(f.k2), kGr);
  auto h2 = sqpo_step(rho2, f.m, kGr);
  auto expected = obj({"a", "v", "b", "c"},
                      {{"1", "a", "v"}, {"2", "a", "c"}, {"3", "v", "b"}, {"4", "c", "b"}});
  EXPECT_TRUE(iso_search(h2.H(), expected, kGr));
  // The same result through the AGREE construction with t = η_K.
  auto h2a = agree_step(rho2, f.m, kGr);
  EXPECT_TRUE(iso_search(h2a.H(), expected, kGr));
}

TEST(Psqpo, OutgoingOnlyCloneOnPath) {
  PathHost f;
  Polarity pol{{"k0", "k1"}, {"k0"}};
  auto rho = make_psqpo_rule(f.l2, identity(f.k2), pol);
  auto expected = obj({"a", "v", "b", "c"},
                      {{"1", "a", "v"}, {"2", "v", "b"}, {"3", "c", "b"}});
  auto step = psqpo_step(rho, f.m);
  EXPECT_TRUE(iso_search(step.H(), expected, kGr));
  ASSERT_TRUE(step.polarized.has_value());
  auto lifted = agree_step(lift(rho), f.m, kGr);
  EXPECT_TRUE(iso_search(lifted.H(), expected, kGr));
  EXPECT_TRUE(is_local_step(lifted, kGr));
  EXPECT_TRUE(is_local_rule(lift(rho), kGr));
}

TEST(Psqpo, EmptyPolarityCloneGetsNoContext) {
  PathHost f;
  Polarity pol{{"k0"}, {"k0"}};
  auto rho = make_psqpo_rule(f.l2, identity(f.k2), pol);
  auto step = psqpo_step(rho, f.m);
  auto expected = obj({"a", "v", "b", "c"}, {{"1", "a", "v"}, {"2", "v", "b"}});
  EXPECT_TRUE(iso_search(step.H(), expected, kGr));
}

TEST(Psqpo, FullPolarityIsSqpo) {
  PathHost f;
  Polarity pol{{"k0", "k1"}, {"k0", "k1"}};
  auto rho = make_psqpo_rule(f.l2, identity(f.k2), pol);
  auto sq = make_sqpo_rule(f.l2, identity(f.k2), kGr);
  EXPECT_TRUE(iso_search(psqpo_step(rho, f.m).H(), sqpo_step(sq, f.m, kGr).H(), kGr));
}

TEST(Psqpo, RejectsInvalidPolarity) {
  auto k = obj({"a", "b"}, {{"e", "a", "b"}});
  Polarity pol{{}, {"b"}};
  EXPECT_THROW(make_psqpo_rule(identity(k), identity(k), pol), RuleError);
}

TEST(Agree, IdentityRuleKeepsGraph) {
  rnd::Source s(8);
  int checked = 0;
  for (int i = 0; i < 100 && checked < 30; ++i) {
    auto g = random_object(s, kGr, 4, 5, "g");
    auto l = random_object(s, kGr, 2, 2, "l");
    auto m = random_mono(s, l, g, kGr);
    if (!m) continue;
    auto rule = make_sqpo_rule(identity(l), identity(l), kGr);
    auto trace = agree_step(rule, *m, kGr);
    EXPECT_TRUE(iso_search(trace.H(), g, kGr));
    EXPECT_TRUE(trace_violations(trace, kGr).empty());
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}

TEST(Agree, MediatorPairFormula) {
  PathHost f;
  auto rho2 = make_sqpo_rule(f.l2, identity(f.k2), kGr);
  auto trace = agree_step(rho2, f.m, kGr);
  EXPECT_EQ(trace.n.node("k0"), "(v,k0)");
  EXPECT_EQ(trace.n.node("k1"), "(v,k1)");
  EXPECT_TRUE(trace.H()->graph.has_node("R:k0"));
  EXPECT_TRUE(trace.H()->graph.has_node("D:(a,*)"));
}

TEST(Agree, RejectsBadInputs) {
  PathHost f;
  auto rho = make_sqpo_rule(identity(f.l), identity(f.l), kGr);
  auto g = obj({"x"});
  auto two = obj({"p", "q"});
  EXPECT_THROW(agree_step(rho, arrow(f.l, f.g, {{"v", "zz"}}), kGr), PreconditionError);
  auto collapse = arrow(two, g, {{"p", "x"}, {"q", "x"}});
  auto rule2 = make_sqpo_rule(identity(two), identity(two), kGr);
  EXPECT_THROW(agree_step(rule2, collapse, kGr), PreconditionError);
  EXPECT_THROW(make_agree_rule(identity(two), identity(two), collapse, kGr), RuleError);
  Rule broken = rule2;
  broken.t = collapse;
  auto m = arrow(two, obj({"x", "y"}), {{"p", "x"}, {"q", "y"}});
  EXPECT_THROW(agree_step(broken, m, kGr), RuleError);
}

TEST(NonLocal, SetDeletionOfUnmatched) {
  auto set = CategoryInstance::set();
  const NodeId elt = *set.typegraph().nodes().begin();
  auto x = oracle::typed_obj({{"x", elt}}, {});
  auto g = oracle::typed_obj({{"x", elt}, {"y", elt}, {"z", elt}}, {});
  auto rule = make_agree_rule(identity(x), identity(x), identity(x), set);
  auto m = arrow(x, g, {{"x", "x"}});
  auto trace = agree_step(rule, m, set);
  EXPECT_EQ(trace.H()->graph.node_count(), 1u);
  EXPECT_FALSE(is_local_rule(rule, set));
  EXPECT_FALSE(is_local_step(trace, set));

  Square sq{rule.l, trace.n, trace.m, trace.g};
  auto c = complement_of_square(sq, set);
  EXPECT_EQ(c.of_left.object->graph.node_count(), 0u);
  EXPECT_EQ(c.of_right.object->graph.nodes(), (std::set<NodeId>{"y", "z"}));
}

TEST(Complement, Examples) {
  PathHost f;
  auto id = strict_complement(identity(f.g), kGr);
  EXPECT_TRUE(id.object->graph.empty());
  auto all = strict_complement(zero(f.g, kGr), kGr);
  EXPECT_TRUE(validate_morphism(all.inclusion, kGr).is_iso);
  auto c = strict_complement(f.m, kGr);
  EXPECT_EQ(c.object->graph.nodes(), (std::set<NodeId>{"a", "b"}));
  EXPECT_EQ(c.object->graph.edge_count(), 0u);
  auto cat = strict_complement_by_classifier(f.m, kGr);
  EXPECT_EQ(cat.object->graph.node_count(), 2u);
  EXPECT_EQ(cat.object->graph.edge_count(), 0u);
}

TEST(Complement, DirectMatchesClassifierOnRandomMonos) {
  for (const auto& inst : {kGr, CategoryInstance::grpol()}) {
    rnd::Source s(12);
    int checked = 0;
    for (int i = 0; i < 300 && checked < 60; ++i) {
      Object go = rnd::graph(s, 4, 5, "g");
      Object lo = rnd::graph(s, 2, 2, "l");
      if (inst.is_polarized()) {
        rnd::polarize(s, go);
        rnd::polarize(s, lo);
      }
      auto g = make_object(go);
      auto l = make_object(lo);
      auto m = random_mono(s, l, g, inst);
      if (!m) continue;
      // strict_complement cross-checks both constructions internally.
      auto c = strict_complement(*m, inst);
      // Largest subobject disjoint from m(L): every node outside the image is
      // kept, and an edge is kept iff both ends are.
      for (const auto& n : g->graph.nodes()) {
        bool hit = false;
        for (const auto& [a, b] : m->node_map()) hit |= b == n;
        EXPECT_EQ(c.object->graph.has_node(n), !hit);
      }
      for (const auto& [e, ends] : g->graph.edges()) {
        bool kept = c.object->graph.has_node(ends.src) && c.object->graph.has_node(ends.tgt);
        EXPECT_EQ(c.object->graph.has_edge(e), kept);
      }
      ++checked;
    }
    EXPECT_EQ(checked, 60) << inst.name();
  }
}

TEST(Locality, SqpoRuleIsLocal) {
  PathHost f;
  auto rho2 = make_sqpo_rule(f.l2, identity(f.k2), kGr);
  EXPECT_TRUE(is_local_rule(rho2, kGr));
  auto trace = agree_step(rho2, f.m, kGr);
  EXPECT_TRUE(is_local_step(trace, kGr));
  Square sq{identity(f.l), identity(f.l), identity(f.l), identity(f.l)};
  EXPECT_TRUE(validate_morphism(complement_of_square(sq, kGr).arrow, kGr).is_iso);
}

TEST(Locality, ComplementOfSquareRejectsNonPullback) {
  auto k = obj({"a"});
  auto d = obj({"a", "b"});
  auto inc = arrow(k, d, {{"a", "a"}});
  // Square with d on all corners but k top-left: commutes, is not a pullback.
  Square sq{inc, inc, identity(d), identity(d)};
  EXPECT_THROW(complement_of_square(sq, kGr), PreconditionError);
}
