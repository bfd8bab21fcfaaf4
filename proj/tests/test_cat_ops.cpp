#include <gtest/gtest.h>

#include "agree/cat_ops.hpp"
#include "agree/error.hpp"
#include "oracles.hpp"
#include "random_graphs.hpp"

using namespace agree;
using oracle::arrow;
using oracle::obj;

namespace {

const Graph& two_type_graph() {
  static const Graph tg = oracle::graph(
      {"A", "B"}, {{"x", "A", "B"}, {"y", "B", "A"}, {"z", "B", "B"}});
  return tg;
}

std::vector<CategoryInstance> instances() {
  return {CategoryInstance::gr(), CategoryInstance::typed(two_type_graph()),
          CategoryInstance::grpol()};
}

ObjectRef random_object(rnd::Source& s, const CategoryInstance& inst,
                        std::size_t nodes, std::size_t edges, const std::string& prefix) {
  if (inst.is_typed()) {
    return make_object(rnd::typed_graph(s, inst.typegraph(), nodes, edges, prefix));
  }
  Object x = rnd::graph(s, nodes, edges, prefix);
  if (inst.is_polarized()) rnd::polarize(s, x);
  return make_object(std::move(x));
}

/// A random mono in the class, by searching injective maps.
std::optional<Morphism> random_mono(rnd::Source& s, const ObjectRef& x,
                                    const ObjectRef& y, const CategoryInstance& inst) {
  SearchOptions opt;
  opt.mono_in_M = true;
  auto all = all_morphisms(x, y, inst, opt);
  if (all.empty()) return std::nullopt;
  return all[s.below(all.size())];
}

}  // namespace

TEST(Pullback, OfIdentitiesIsIso) {
  auto x = obj({"a", "b"}, {{"e", "a", "b"}, {"l", "b", "b"}});
  auto inst = CategoryInstance::gr();
  auto pb = pullback(identity(x), identity(x), inst);
  EXPECT_TRUE(iso_search(pb.object, x, inst).has_value());
  EXPECT_TRUE(pb.p1.bijective());
}

TEST(Pullback, HandExample) {
  auto z = obj({"a", "b"}, {{"e", "a", "b"}});
  auto y = obj({"c"});
  auto g = arrow(y, z, {{"c", "b"}});
  auto pb = pullback(identity(z), g, CategoryInstance::gr());
  EXPECT_EQ(pb.object->graph.node_count(), 1u);
  EXPECT_EQ(pb.object->graph.edge_count(), 0u);
  EXPECT_TRUE(pb.object->graph.has_node("(b,c)"));
}

TEST(Pullback, RejectsMismatchedTargets) {
  auto a = obj({"a"});
  EXPECT_THROW(pullback(identity(a), identity(obj({"b"})), CategoryInstance::gr()),
               UsageError);
}

TEST(Pullback, UniversalPropertyOracleOnRandomCospans) {
  for (const auto& inst : instances()) {
    rnd::Source s(100 + static_cast<int>(inst.kind()));
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
      auto z = random_object(s, inst, 3, 4, "z");
      auto x = random_object(s, inst, 3, 3, "x");
      auto y = random_object(s, inst, 3, 3, "y");
      auto f = rnd::random_arrow(s, x, z, inst);
      auto g = rnd::random_arrow(s, y, z, inst);
      if (!f || !g) continue;
      auto pb = pullback(*f, *g, inst);
      EXPECT_TRUE(object_violations(*pb.object, inst).empty());
      EXPECT_TRUE(oracle::pullback_property(*f, *g, pb.p1, pb.p2, inst))
          << inst.name() << " " << describe(*f) << " / " << describe(*g);
      ++checked;
    }
    EXPECT_GT(checked, 15) << inst.name();
  }
}

TEST(Pullback, MonosAreStable) {
  for (const auto& inst : instances()) {
    rnd::Source s(7);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
      auto z = random_object(s, inst, 4, 4, "z");
      auto x = random_object(s, inst, 3, 3, "x");
      auto y = random_object(s, inst, 3, 3, "y");
      auto f = rnd::random_arrow(s, x, z, inst);
      auto m = random_mono(s, y, z, inst);
      if (!f || !m) continue;
      auto pb = pullback(*f, *m, inst);
      EXPECT_TRUE(oracle::in_M(pb.p1, inst)) << inst.name();
      EXPECT_TRUE(in_mono_class(pb.p1, inst));
      ++checked;
    }
    EXPECT_GT(checked, 30) << inst.name();
  }
}

TEST(PullbackMediator, ConeOfProjectionsGivesIdentity) {
  auto z = obj({"a", "b"}, {{"e", "a", "b"}});
  auto x = obj({"p", "q", "r"}, {{"e1", "p", "q"}, {"e2", "r", "q"}});
  auto f = arrow(x, z, {{"p", "a"}, {"q", "b"}, {"r", "a"}}, {{"e1", "e"}, {"e2", "e"}});
  auto inst = CategoryInstance::gr();
  auto pb = pullback(f, f, inst);
  auto m = pullback_mediator(pb, pb.p1, pb.p2);
  EXPECT_EQ(m, identity(pb.object));

  auto none = pullback_mediator(pb, zero(x, inst), zero(x, inst));
  EXPECT_TRUE(none.node_map().empty());
  EXPECT_EQ(none.source().graph.node_count(), 0u);
}

TEST(PullbackMediator, PairFormulaAndNonCommutingCone) {
  auto z = obj({"a", "b"}, {{"e", "a", "b"}});
  auto x = obj({"p", "q"}, {{"e1", "p", "q"}});
  auto f = arrow(x, z, {{"p", "a"}, {"q", "b"}}, {{"e1", "e"}});
  auto inst = CategoryInstance::gr();
  auto pb = pullback(f, identity(z), inst);
  auto w = obj({"k"});
  auto v = arrow(w, x, {{"k", "q"}});
  auto u = arrow(w, z, {{"k", "b"}});
  auto med = pullback_mediator(pb, v, u);
  EXPECT_EQ(med.node("k"), "(q,b)");
  auto bad = arrow(w, z, {{"k", "a"}});
  EXPECT_THROW(pullback_mediator(pb, v, bad), PreconditionError);
}

TEST(Pushout, IdentityRuleGivesIsoCopy) {
  auto d = obj({"k", "d"}, {{"e", "d", "k"}});
  auto k = obj({"k"});
  auto n = arrow(k, d, {{"k", "k"}});
  auto inst = CategoryInstance::gr();
  auto po = pushout_along_mono(n, identity(k), inst);
  EXPECT_TRUE(iso_search(po.object, d, inst).has_value());
}

TEST(Pushout, HandExample) {
  auto k = obj({"k"});
  auto d = obj({"k", "d"}, {{"e", "d", "k"}});
  auto r_obj = obj({"k1", "k2"});
  auto n = arrow(k, d, {{"k", "k"}});
  auto r = arrow(k, r_obj, {{"k", "k1"}});
  auto po = pushout_along_mono(n, r, CategoryInstance::gr());
  EXPECT_EQ(po.object->graph.nodes(), (std::set<NodeId>{"D:d", "R:k1", "R:k2"}));
  ASSERT_EQ(po.object->graph.edge_count(), 1u);
  EXPECT_EQ(po.object->graph.ends("D:e"), (Endpoints{"D:d", "R:k1"}));
  EXPECT_EQ(po.h.node("k"), "R:k1");
}

TEST(Pushout, DeletionWithEmptyInterface) {
  auto d = obj({"a", "b"}, {{"e", "a", "b"}});
  auto empty = make_object(Graph{});
  auto inst = CategoryInstance::gr();
  auto po = pushout_along_mono(zero(d, inst), identity(empty), inst);
  EXPECT_TRUE(iso_search(po.object, d, inst).has_value());
}

TEST(Pushout, RejectsNonMonoAndPolarized) {
  auto k = obj({"a", "b"});
  auto d = obj({"c"});
  auto n = arrow(k, d, {{"a", "c"}, {"b", "c"}});
  EXPECT_THROW(pushout_along_mono(n, identity(k), CategoryInstance::gr()),
               PreconditionError);
  auto pk = make_object(pol_induce(oracle::graph({"a"})));
  EXPECT_THROW(pushout_along_mono(identity(pk), identity(pk), CategoryInstance::grpol()),
               UsageError);
}

TEST(Pushout, UniversalPropertyOracleOnRandomSpans) {
  for (const auto& inst : {CategoryInstance::gr(), CategoryInstance::typed(two_type_graph())}) {
    rnd::Source s(300 + static_cast<int>(inst.kind()));
    int checked = 0;
    for (int i = 0; i < 80 && checked < 25; ++i) {
      auto k = random_object(s, inst, 2, 1, "k");
      auto d = random_object(s, inst, 3, 3, "d");
      auto r_obj = random_object(s, inst, 3, 2, "r");
      auto n = random_mono(s, k, d, inst);
      auto r = rnd::random_arrow(s, k, r_obj, inst);
      if (!n || !r) continue;
      auto po = pushout_along_mono(*n, *r, inst);
      EXPECT_TRUE(validate_morphism(po.h, inst).valid);
      EXPECT_TRUE(validate_morphism(po.p, inst).valid);
      EXPECT_TRUE(oracle::pushout_property(*n, *r, po.h, po.p, inst))
          << inst.name() << " " << describe(*n) << " / " << describe(*r);
      ++checked;
    }
    EXPECT_GE(checked, 15) << inst.name();
  }
}

TEST(Constants, FinalObjectByUniquenessOfBang) {
  for (const auto& inst : instances()) {
    auto c = constants(inst);
    EXPECT_TRUE(c.bang_is_in_M);
    EXPECT_TRUE(c.initial_object->graph.empty());
    auto b0 = bang(c.initial_object, inst);
    EXPECT_TRUE(in_mono_class(b0, inst));
    rnd::Source s(17);
    for (int i = 0; i < 20; ++i) {
      auto x = random_object(s, inst, 4, 5, "x");
      EXPECT_EQ(oracle::homs(x, c.final_object, inst).size(), 1u) << inst.name();
      EXPECT_TRUE(validate_morphism(bang(x, inst), inst).valid);
      EXPECT_EQ(oracle::homs(c.initial_object, x, inst).size(), 1u);
    }
  }
  auto gr = constants(CategoryInstance::gr());
  EXPECT_EQ(gr.final_object->graph.node_count(), 1u);
  EXPECT_EQ(gr.final_object->graph.edge_count(), 1u);

  auto set = constants(CategoryInstance::set());
  EXPECT_EQ(set.final_object->graph.node_count(), 1u);
  EXPECT_EQ(set.final_object->graph.edge_count(), 0u);
}

TEST(IsoSearch, Examples) {
  auto inst = CategoryInstance::gr();
  auto x = obj({"a", "b"}, {{"e", "a", "b"}});
  auto same = iso_search(x, x, inst);
  ASSERT_TRUE(same);
  EXPECT_EQ(*same, identity(x));
  EXPECT_FALSE(iso_search(obj({"a", "b"}), obj({"c"}), inst));
  auto y = obj({"c", "d"}, {{"f", "c", "d"}});
  auto u = iso_search(x, y, inst);
  ASSERT_TRUE(u);
  EXPECT_EQ(u->node("a"), "c");
  EXPECT_EQ(u->node("b"), "d");
}

TEST(IsoSearch, AgreesWithBruteForce) {
  for (const auto& inst : instances()) {
    rnd::Source s(41);
    for (int i = 0; i < 150; ++i) {
      auto x = random_object(s, inst, 3, 3, "x");
      auto y = random_object(s, inst, 3, 3, "y");
      auto u = iso_search(x, y, inst);
      EXPECT_EQ(u.has_value(), oracle::isomorphic(x, y, inst)) << inst.name();
      if (u) EXPECT_TRUE(validate_morphism(*u, inst).is_iso);
    }
  }
}

TEST(Enumeration, CountsMatchBruteForce) {
  for (const auto& inst : instances()) {
    rnd::Source s(55);
    for (int i = 0; i < 100; ++i) {
      auto x = random_object(s, inst, 3, 3, "x");
      auto y = random_object(s, inst, 3, 4, "y");
      auto naive = oracle::homs(x, y, inst);
      auto all = all_morphisms(x, y, inst);
      ASSERT_EQ(all.size(), naive.size()) << inst.name();
      std::size_t in_m = 0;
      for (const auto& f : naive) in_m += oracle::in_M(f, inst);
      SearchOptions opt;
      opt.mono_in_M = true;
      EXPECT_EQ(all_morphisms(x, y, inst, opt).size(), in_m) << inst.name();
      EXPECT_EQ(count_morphisms(x, y, inst, {}, 2), std::min<std::size_t>(2, naive.size()));
    }
  }
}

TEST(PullbackSquare, CanonicalAndMutated) {
  auto inst = CategoryInstance::gr();
  auto z = obj({"a", "b"}, {{"e", "a", "b"}});
  auto x = obj({"p", "q"}, {{"e1", "p", "q"}});
  auto f = arrow(x, z, {{"p", "a"}, {"q", "b"}}, {{"e1", "e"}});
  auto pb = pullback(f, f, inst);
  EXPECT_TRUE(is_pullback_square(Square{pb.p1, pb.p2, f, f}, inst));

  Object bigger = *pb.object;
  bigger.graph.add_node("extra");
  auto big = make_object(bigger);
  auto nm1 = pb.p1.node_map();
  nm1["extra"] = "p";
  Morphism q1(big, x, nm1, pb.p1.edge_map());
  Morphism q2(big, x, nm1, pb.p2.edge_map());
  EXPECT_FALSE(is_pullback_square(Square{q1, q2, f, f}, inst));

  auto y = obj({"c"});
  auto g1 = arrow(y, x, {{"c", "p"}});
  auto g2 = arrow(y, x, {{"c", "q"}});
  EXPECT_THROW(is_pullback_square(Square{g1, g2, f, f}, inst), PreconditionError);
}

TEST(PullbackSquare, PastingAndDecomposition) {
  for (const auto& inst : instances()) {
    rnd::Source s(77);
    int checked = 0;
    for (int i = 0; i < 2000 && checked < 40; ++i) {
      auto c = random_object(s, inst, 3, 3, "c");
      auto b = random_object(s, inst, 3, 3, "b");
      auto e = random_object(s, inst, 3, 3, "e");
      auto a = random_object(s, inst, 2, 2, "a");
      auto g = rnd::random_arrow(s, e, c, inst);   // E -> C
      auto h = rnd::random_arrow(s, b, c, inst);   // B -> C
      auto k = rnd::random_arrow(s, a, e, inst);   // A -> E
      if (!g || !h || !k) continue;
      // Right square: pullback of (h, g). Left: pullback of its p2 along k.
      auto right = pullback(*h, *g, inst);
      auto left = pullback(right.p2, *k, inst);
      auto outer_top = compose(right.p1, left.p1);
      EXPECT_TRUE(is_pullback_square(Square{outer_top, left.p2, *h, compose(*g, *k)}, inst));

      // Decomposition: outer pullback plus right pullback give a left one.
      auto outer = pullback(*h, compose(*g, *k), inst);
      auto z = pullback_mediator(right, outer.p1, compose(*k, outer.p2));
      EXPECT_TRUE(is_pullback_square(Square{z, outer.p2, right.p2, *k}, inst));
      ++checked;
    }
    EXPECT_GT(checked, 20) << inst.name();
  }
}
