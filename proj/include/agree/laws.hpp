#pragma once

// Seeded random instances and the executable law suite.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "agree/graph.hpp"
#include "agree/rewrite.hpp"

namespace agree::laws {

struct Bounds {
  std::size_t nodes = 4;
  std::size_t edges = 5;
};

/// Deterministic generator of graphs, arrows and rules within Bounds. Every
/// object it returns has at most `nodes` nodes and `edges` edges.
class Generator {
 public:
  Generator(std::uint64_t seed, Bounds bounds, CategoryInstance inst);

  std::size_t below(std::size_t n);
  bool coin();

  const CategoryInstance& instance() const noexcept { return inst_; }
  const Bounds& bounds() const noexcept { return bounds_; }

  ObjectRef graph(const std::string& prefix = "v");
  /// Arbitrary arrow X -> Y with Y drawn around the image of X.
  Morphism arrow_from(const ObjectRef& x, const std::string& prefix);
  /// Mono in M from X into a random extension of X.
  Morphism mono_from(const ObjectRef& x, const std::string& prefix);
  /// Mono in M from a random subobject of Y.
  Morphism mono_into(const ObjectRef& y, const std::string& prefix);
  Morphism mono();
  Morphism morphism();
  Rule span_rule();
  /// Gr only: a span with a random interface polarity.
  Rule psqpo_rule();
  /// AGREE rule with T_K = K + T(0) + extra edges touching K, so that
  /// T_K∖K ≅ T(0).
  Rule local_rule();

 private:
  Object fresh_object() const;
  void add_random_node(Object& x, const std::string& id);
  /// Random edge between nodes of x allowed by types and polarity; false if
  /// none is possible for the chosen endpoints.
  bool add_random_edge(Object& x, const std::string& id,
                       const std::vector<NodeId>& sources,
                       const std::vector<NodeId>& targets);
  void polarize(Object& x);

  std::mt19937_64 engine_;
  Bounds bounds_;
  CategoryInstance inst_;
};

enum class GenKind { Graph, Mono, Morphism, SpanRule, PsqpoRule };

GenKind parse_gen_kind(const std::string& text);
using Generated = std::variant<ObjectRef, Morphism, Rule>;
/// generate(kind, seed, bound, instance) as a single deterministic call.
Generated generate(GenKind kind, std::uint64_t seed, Bounds bounds,
                   const CategoryInstance& inst);

enum class LawId {
  EtaCartesian,
  PhiUnique,
  PhiDecomp,
  ComplementT0,
  ComplementTlIso,
  Locality,
  FpbcFinal,
  SqpoAgree,
  PsqpoAgree,
  CounitIso,
};

std::vector<LawId> all_laws();
/// "ETA_CARTESIAN", ...
std::string to_string(LawId law);
/// Case-insensitive; throws UsageError on an unknown id.
LawId parse_law(const std::string& text);
bool applicable(LawId law, const CategoryInstance& inst);

struct LawConfig {
  std::uint64_t seed = 0;
  Bounds bounds;
  /// 0 selects the law's default count.
  std::size_t instances = 0;
  /// Negative control: the first LOCALITY instance uses a rule with t = id.
  bool inject_nonlocal = false;
};

std::size_t default_instances(LawId law);

struct LawReport {
  LawId law;
  std::string category;
  std::uint64_t seed = 0;
  Bounds bounds;
  std::size_t instances = 0;
  /// Draws rejected because they exceeded the law's own limits.
  std::size_t resampled = 0;
  bool pass = false;
  /// Extra bounds and checks specific to the law.
  std::vector<std::string> notes;
  /// First failing instance: its arrows as documents and what went wrong.
  std::optional<nlohmann::json> counterexample;
  double seconds = 0;
};

/// Throws UsageError when the law does not apply to the instance.
LawReport run_law(LawId law, const LawConfig& config, const CategoryInstance& inst);

nlohmann::json to_json(const LawReport& report);
/// "PASS ETA_CARTESIAN gr seed=0 nodes<=4 edges<=5 instances=200 (0.12 s)"
std::string summary_line(const LawReport& report);

/// Type graph used for typed law runs: A, B; x: A->B, y: B->A, z: B->B.
Graph default_typegraph();
/// "gr", "typed" (over default_typegraph), "pol" or "set"; throws UsageError.
CategoryInstance instance_named(const std::string& name);

}  // namespace agree::laws
