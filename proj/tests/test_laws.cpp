#include <gtest/gtest.h>

#include "agree/error.hpp"
#include "agree/io.hpp"
#include "agree/laws.hpp"
#include "oracles.hpp"

using namespace agree;
using json = nlohmann::json;

namespace {

std::vector<CategoryInstance> all_instances() {
  return {CategoryInstance::gr(), CategoryInstance::typed(laws::default_typegraph()),
          CategoryInstance::grpol()};
}

json as_json(const laws::Generated& value, const CategoryInstance& inst) {
  if (auto x = std::get_if<ObjectRef>(&value)) return io::to_json(**x, inst);
  if (auto f = std::get_if<Morphism>(&value)) return io::to_standalone_json(*f, inst);
  return io::to_json(std::get<Rule>(value), inst);
}

}  // namespace

TEST(Generate, ZeroBoundGivesEmptyGraph) {
  for (const auto& inst : all_instances()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto value = laws::generate(laws::GenKind::Graph, seed, {0, 0}, inst);
      EXPECT_TRUE(std::get<ObjectRef>(value)->graph.empty());
    }
  }
}

TEST(Generate, MonosAreInM) {
  for (const auto& inst : all_instances()) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      Morphism m = std::get<Morphism>(laws::generate(laws::GenKind::Mono, seed, {4, 5}, inst));
      EXPECT_TRUE(validate_morphism(m, inst).is_mono_in_M) << inst.name() << " " << seed;
      EXPECT_TRUE(oracle::in_M(m, inst)) << inst.name() << " " << seed;
    }
  }
}

TEST(Generate, ValuesSatisfyInvariants) {
  for (const auto& inst : all_instances()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      laws::Generator gen(seed, {4, 5}, inst);
      ObjectRef x = gen.graph();
      EXPECT_TRUE(object_violations(*x, inst).empty());
      EXPECT_LE(x->graph.node_count(), 4u);
      EXPECT_LE(x->graph.edge_count(), 5u);
      Morphism f = gen.morphism();
      EXPECT_TRUE(oracle::is_hom(f, inst)) << describe(f);
      EXPECT_LE(f.target().graph.node_count(), 4u);
      EXPECT_LE(f.target().graph.edge_count(), 5u);
      Morphism into = gen.mono_into(x, "s");
      EXPECT_TRUE(oracle::in_M(into, inst));
      Morphism from = gen.mono_from(x, "e");
      EXPECT_TRUE(oracle::in_M(from, inst));
      EXPECT_LE(from.target().graph.node_count(), 4u);
      if (!inst.is_polarized()) {
        Rule local = gen.local_rule();
        EXPECT_TRUE(is_local_rule(local, inst));
      }
      Rule span = gen.span_rule();
      EXPECT_EQ(span.mode, Mode::Sqpo);
    }
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rule rule = std::get<Rule>(laws::generate(laws::GenKind::PsqpoRule, seed, {4, 5},
                                              CategoryInstance::gr()));
    ASSERT_TRUE(rule.k_polarity);
    EXPECT_TRUE(object_violations(*polarized_interface(rule), CategoryInstance::grpol()).empty());
  }
  EXPECT_THROW(laws::Generator(0, {4, 5}, CategoryInstance::grpol()).psqpo_rule(), UsageError);
}

TEST(Generate, SameSeedSameValue) {
  for (const auto& inst : all_instances()) {
    for (auto kind : {laws::GenKind::Graph, laws::GenKind::Mono, laws::GenKind::Morphism,
                      laws::GenKind::SpanRule}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto a = as_json(laws::generate(kind, seed, {4, 5}, inst), inst);
        auto b = as_json(laws::generate(kind, seed, {4, 5}, inst), inst);
        EXPECT_EQ(a, b);
      }
    }
  }
  // Different seeds do not all coincide.
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    seen.insert(as_json(laws::generate(laws::GenKind::Morphism, seed, {4, 5},
                                       CategoryInstance::gr()),
                        CategoryInstance::gr())
                    .dump());
  }
  EXPECT_GT(seen.size(), 10u);
  EXPECT_EQ(laws::parse_gen_kind("psqpo-rule"), laws::GenKind::PsqpoRule);
  EXPECT_THROW(laws::parse_gen_kind("hypergraph"), UsageError);
}

TEST(Generate, EtaSquaresAgainstPullbackOracle) {
  // The law machinery and the naive universal-property oracle agree.
  for (const auto& inst : all_instances()) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      laws::Generator gen(seed, {2, 2}, inst);
      Morphism f = gen.morphism();
      auto tx = t_object(f.source_ref(), inst);
      auto ty = t_object(f.target_ref(), inst);
      Morphism tf = t_morphism(f, tx, ty);
      EXPECT_TRUE(oracle::pullback_property(ty.unit, tf, f, tx.unit, inst))
          << inst.name() << " " << describe(f);
    }
  }
}

TEST(LawIds, NamesAndApplicability) {
  for (auto law : laws::all_laws()) {
    EXPECT_EQ(laws::parse_law(laws::to_string(law)), law);
  }
  EXPECT_EQ(laws::parse_law("fpbc-final"), laws::LawId::FpbcFinal);
  EXPECT_THROW(laws::parse_law("NOPE"), UsageError);
  auto gr = CategoryInstance::gr();
  auto typed = CategoryInstance::typed(laws::default_typegraph());
  auto pol = CategoryInstance::grpol();
  for (auto law : laws::all_laws()) EXPECT_TRUE(laws::applicable(law, gr));
  EXPECT_FALSE(laws::applicable(laws::LawId::PsqpoAgree, typed));
  EXPECT_TRUE(laws::applicable(laws::LawId::SqpoAgree, typed));
  EXPECT_FALSE(laws::applicable(laws::LawId::Locality, pol));
  EXPECT_TRUE(laws::applicable(laws::LawId::FpbcFinal, pol));
  EXPECT_THROW(laws::run_law(laws::LawId::SqpoAgree, {}, pol), UsageError);
}

TEST(Laws, EveryApplicableLawPassesOnShortRuns) {
  for (const auto& inst : all_instances()) {
    for (auto law : laws::all_laws()) {
      if (!laws::applicable(law, inst)) continue;
      laws::LawConfig config;
      config.seed = 11;
      config.instances = 25;
      auto report = laws::run_law(law, config, inst);
      EXPECT_TRUE(report.pass) << laws::summary_line(report) << "\n"
                               << (report.counterexample ? report.counterexample->dump(2) : "");
      EXPECT_EQ(report.instances, 25u);
      EXPECT_EQ(report.category, inst.name());
      EXPECT_FALSE(report.counterexample.has_value());
    }
  }
}

TEST(Laws, ReportsRecordBoundsAndAreDeterministic) {
  laws::LawConfig config;
  config.instances = 30;
  auto a = laws::run_law(laws::LawId::PhiUnique, config, CategoryInstance::gr());
  auto b = laws::run_law(laws::LawId::PhiUnique, config, CategoryInstance::gr());
  EXPECT_EQ(a.bounds.nodes, 3u);
  EXPECT_EQ(a.bounds.edges, 5u);
  EXPECT_FALSE(a.notes.empty());
  EXPECT_EQ(a.resampled, b.resampled);
  json doc = laws::to_json(a);
  EXPECT_EQ(doc["law"], "PHI_UNIQUE");
  EXPECT_EQ(doc["seed"], 0);
  EXPECT_TRUE(doc.contains("notes"));
  auto fpbc = laws::run_law(laws::LawId::FpbcFinal, {0, {4, 5}, 5, false}, CategoryInstance::gr());
  EXPECT_EQ(fpbc.bounds.nodes, 3u);
  EXPECT_EQ(laws::default_instances(laws::LawId::EtaCartesian), 200u);
  EXPECT_GE(laws::default_instances(laws::LawId::FpbcFinal), 100u);
}

TEST(Laws, NonLocalRuleIsCaughtWithRecheckableCounterexample) {
  for (const auto& inst : {CategoryInstance::gr(),
                           CategoryInstance::typed(laws::default_typegraph())}) {
    laws::LawConfig config;
    config.instances = 10;
    config.inject_nonlocal = true;
    auto report = laws::run_law(laws::LawId::Locality, config, inst);
    ASSERT_FALSE(report.pass);
    ASSERT_TRUE(report.counterexample.has_value());
    EXPECT_EQ(report.instances, 1u);
    const json& cex = *report.counterexample;
    EXPECT_EQ(cex["instance"], 0);

    // Re-check from the serialized documents alone.
    io::RuleDoc rd = io::parse_rule(cex["rule"]);
    auto m = io::parse_standalone_morphism(cex["arrows"]["m"]);
    Morphism match(rd.rule.L(), m.arrow.target_ref(), m.arrow.node_map(), m.arrow.edge_map());
    EXPECT_FALSE(is_local_rule(rd.rule, rd.inst));
    EXPECT_FALSE(is_local_step(agree_step(rd.rule, match, rd.inst), rd.inst));
  }
}
