#include <gtest/gtest.h>

#include "agree/error.hpp"
#include "agree/graph.hpp"
#include "oracles.hpp"
#include "random_graphs.hpp"

using namespace agree;
using oracle::arrow;
using oracle::obj;
using oracle::pol_obj;

TEST(Graph, RejectsDuplicateIdsAndDanglingEndpoints) {
  Graph g;
  g.add_node("a");
  EXPECT_THROW(g.add_node("a"), StructuralError);
  EXPECT_THROW(g.add_edge("e", "a", "b"), StructuralError);
  g.add_edge("e", "a", "a");
  EXPECT_THROW(g.add_edge("e", "a", "a"), StructuralError);
  // Nodes and edges have separate id spaces.
  g.add_edge("a", "a", "a");
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(ValidateMorphism, IdentityIsValidMonoIso) {
  for (const auto& inst : {CategoryInstance::gr(), CategoryInstance::grpol()}) {
    auto x = inst.is_polarized()
                 ? pol_obj({"a", "b"}, {{"e", "a", "b"}}, {"a"}, {"b"})
                 : obj({"a", "b"}, {{"e", "a", "b"}, {"l", "a", "a"}});
    auto r = validate_morphism(identity(x), inst);
    EXPECT_TRUE(r.valid);
    EXPECT_TRUE(r.is_mono_in_M);
    EXPECT_TRUE(r.is_iso);
  }
}

TEST(ValidateMorphism, CollapseIsValidNotMono) {
  auto x = obj({"a", "b"});
  auto y = obj({"c"});
  auto r = validate_morphism(arrow(x, y, {{"a", "c"}, {"b", "c"}}), CategoryInstance::gr());
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(r.is_mono_in_M);
  EXPECT_FALSE(r.is_iso);
}

TEST(ValidateMorphism, NonStrictInclusionIsMonoButNotInM) {
  auto x = pol_obj({"a"}, {}, {}, {});
  auto y = pol_obj({"a"}, {}, {"a"}, {"a"});
  auto f = arrow(x, y, {{"a", "a"}});
  auto r = validate_morphism(f, CategoryInstance::grpol());
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(r.is_mono_in_M);
  EXPECT_FALSE(r.is_iso);
  EXPECT_TRUE(f.injective());
}

TEST(ValidateMorphism, DanglingEntryIsStructuralNotHomomorphism) {
  auto x = obj({"a"});
  auto y = obj({"b"});
  auto r = validate_morphism(arrow(x, y, {{"a", "zz"}}), CategoryInstance::gr());
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.structural_error.has_value());
  EXPECT_NE(r.structural_error->find("zz"), std::string::npos);

  auto bad = validate_morphism(arrow(obj({"a", "b"}, {{"e", "a", "b"}}),
                                     obj({"c", "d"}, {{"f", "d", "c"}}),
                                     {{"a", "c"}, {"b", "d"}}, {{"e", "f"}}),
                               CategoryInstance::gr());
  EXPECT_FALSE(bad.valid);
  EXPECT_FALSE(bad.structural_error.has_value());
}

TEST(ValidateMorphism, PartialMapIsInvalid) {
  auto r = validate_morphism(arrow(obj({"a", "b"}), obj({"c"}), {{"a", "c"}}),
                             CategoryInstance::gr());
  EXPECT_FALSE(r.valid);
}

TEST(ValidateMorphism, TypingMustCommute) {
  Graph tg = oracle::graph({"A", "B"});
  auto inst = CategoryInstance::typed(tg);
  auto x = oracle::typed_obj({{"a", "A"}}, {});
  auto y = oracle::typed_obj({{"b", "B"}, {"c", "A"}}, {});
  EXPECT_FALSE(validate_morphism(arrow(x, y, {{"a", "b"}}), inst).valid);
  EXPECT_TRUE(validate_morphism(arrow(x, y, {{"a", "c"}}), inst).valid);
}

TEST(ValidateMorphism, PolarityMustBePreserved) {
  auto x = pol_obj({"a"}, {}, {"a"}, {});
  auto y = pol_obj({"b"}, {}, {}, {"b"});
  EXPECT_FALSE(validate_morphism(arrow(x, y, {{"a", "b"}}), CategoryInstance::grpol()).valid);
}

TEST(ValidateMorphism, AgreesWithNaiveOracleOnRandomMaps) {
  rnd::Source s(11);
  for (int i = 0; i < 300; ++i) {
    auto x = make_object(rnd::graph(s, 3, 3, "x"));
    auto y = make_object(rnd::graph(s, 3, 4, "y"));
    if (y->graph.node_count() == 0) continue;
    NodeMap nm;
    std::vector<std::string> yn(y->graph.nodes().begin(), y->graph.nodes().end());
    std::vector<std::string> ye;
    for (const auto& [e, ends] : y->graph.edges()) ye.push_back(e);
    for (const auto& n : x->graph.nodes()) nm[n] = yn[s.below(yn.size())];
    EdgeMap em;
    if (!ye.empty()) {
      for (const auto& [e, ends] : x->graph.edges()) em[e] = ye[s.below(ye.size())];
    }
    Morphism f(x, y, nm, em);
    auto r = validate_morphism(f, CategoryInstance::gr());
    EXPECT_EQ(r.valid, oracle::is_hom(f, CategoryInstance::gr()));
    if (r.valid) EXPECT_EQ(r.is_mono_in_M, oracle::is_injective(f));
  }
}

TEST(PolarityFunctors, InduceMinimalForget) {
  auto a = pol_induce(oracle::graph({"a"}));
  EXPECT_EQ(a.polarity.plus, std::set<NodeId>{"a"});
  EXPECT_EQ(a.polarity.minus, std::set<NodeId>{"a"});

  auto m = pol_minimal(oracle::graph({"a", "b"}, {{"e", "a", "b"}}));
  EXPECT_EQ(m.polarity.plus, std::set<NodeId>{"a"});
  EXPECT_EQ(m.polarity.minus, std::set<NodeId>{"b"});
  EXPECT_TRUE(object_violations(m, CategoryInstance::grpol()).empty());

  rnd::Source s(3);
  for (int i = 0; i < 50; ++i) {
    Graph g = rnd::graph(s, 4, 5).graph;
    EXPECT_EQ(pol_forget(pol_induce(g)).graph, g);
    EXPECT_EQ(pol_forget(pol_induce(g)), (Object{g, {}, {}}));
  }
}

TEST(PolarityFunctors, InducedMorphismsAreStrict) {
  rnd::Source s(5);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    auto x = make_object(rnd::graph(s, 3, 3, "x"));
    auto y = make_object(rnd::graph(s, 3, 4, "y"));
    auto f = rnd::random_arrow(s, x, y, CategoryInstance::gr());
    if (!f) continue;
    auto pf = pol_induce(*f);
    auto r = validate_morphism(pf, CategoryInstance::grpol());
    EXPECT_TRUE(r.valid);
    EXPECT_TRUE(is_strict(pf));
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(PolarityFunctors, RandomPolarizedGraphsSatisfyEndpointCondition) {
  rnd::Source s(9);
  for (int i = 0; i < 100; ++i) {
    Object x = rnd::graph(s, 4, 5);
    rnd::polarize(s, x);
    EXPECT_TRUE(object_violations(x, CategoryInstance::grpol()).empty());
    auto u = relax_polarity(make_object(x));
    EXPECT_TRUE(validate_morphism(u, CategoryInstance::grpol()).valid);
  }
}

TEST(Compose, ClosureOnRandomChains) {
  rnd::Source s(21);
  auto inst = CategoryInstance::gr();
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto x = make_object(rnd::graph(s, 3, 3, "x"));
    auto y = make_object(rnd::graph(s, 3, 4, "y"));
    auto z = make_object(rnd::graph(s, 3, 4, "z"));
    auto f = rnd::random_arrow(s, x, y, inst);
    auto g = rnd::random_arrow(s, y, z, inst);
    if (!f || !g) continue;
    auto gf = compose(*g, *f);
    EXPECT_TRUE(validate_morphism(gf, inst).valid);
    EXPECT_TRUE(oracle::same_maps(gf, oracle::after(*g, *f)));
    ++checked;
  }
  EXPECT_GT(checked, 20);
  EXPECT_THROW(compose(identity(obj({"a"})), identity(obj({"b"}))), UsageError);
}

TEST(Inverse, OfIsoAndRejectsNonIso) {
  auto x = obj({"a", "b"}, {{"e", "a", "b"}});
  auto y = obj({"c", "d"}, {{"f", "c", "d"}});
  auto f = arrow(x, y, {{"a", "c"}, {"b", "d"}}, {{"e", "f"}});
  auto g = inverse(f);
  EXPECT_EQ(compose(g, f), identity(x));
  EXPECT_THROW(inverse(arrow(obj({"a", "b"}), obj({"c"}), {{"a", "c"}, {"b", "c"}})),
               PreconditionError);
}
