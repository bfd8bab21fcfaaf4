#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agree/cat_ops.hpp"
#include "agree/classifier.hpp"
#include "agree/graph.hpp"

namespace agree {

enum class Mode { Agree, Sqpo, Psqpo };

std::string to_string(Mode mode);
/// "agree", "sqpo" or "psqpo" (case-insensitive); throws UsageError.
Mode parse_mode(const std::string& text);

/// Rule (l: K -> L, r: K -> R, t: K -> T_K). For SqPO rules t is η_K; for
/// PSqPO rules t is U(η) of the polarized interface (K, k_polarity).
struct Rule {
  Morphism l;
  Morphism r;
  Morphism t;
  Mode mode = Mode::Agree;
  std::optional<Polarity> k_polarity;

  const ObjectRef& K() const { return l.source_ref(); }
  const ObjectRef& L() const { return l.target_ref(); }
  const ObjectRef& R() const { return r.target_ref(); }
  const ObjectRef& TK() const { return t.target_ref(); }
};

/// Throws RuleError when the arrows do not form a rule or t is not in M.
Rule make_agree_rule(Morphism l, Morphism r, Morphism t,
                     const CategoryInstance& inst);
Rule make_sqpo_rule(Morphism l, Morphism r, const CategoryInstance& inst);
/// Only in Gr. Throws RuleError when (K, polarity) is not a polarized graph.
Rule make_psqpo_rule(Morphism l, Morphism r, Polarity k_polarity);

/// The polarized interface (K, N+_K, N-_K) of a PSqPO rule.
ObjectRef polarized_interface(const Rule& rule);
/// AGREE rule with the same arrows (T_K = U(T(K̂)), t = U(η)).
Rule lift(const Rule& rule);

/// The left square of a rewrite step in the polarized category, kept for
/// PSqPO steps next to its image in Gr.
struct PolarizedPhase {
  Morphism l;  // K̂ -> Pol(L)
  Morphism m;  // Pol(L) -> Pol(G)
  Morphism n;  // K̂ -> D̂
  Morphism g;  // D̂ -> Pol(G)
};

/// Every object and arrow of one rewrite step:
///
///   T_K <-n'- D -g-> G           l' = φ(t, l): T_K -> T(L)
///    ^        ^      ^           m̄ = φ(m, id): G -> T(L)
///    t        n      m           (D, g, n') pullback of (m̄, l')
///    K ------ K -l-> L           n: K -> D mediator of (m∘l, t)
///    K -r-> R, D -h-> H <-p- R   pushout of (n, r)
///
/// For SqPO steps T_K = T(K), l' = T(l). For PSqPO steps l', m̄, n' live in
/// Grpol and `polarized` holds the polarized left square; g and n are the
/// underlying Gr arrows.
struct RewriteTrace {
  Rule rule;
  Morphism m;
  Morphism l_prime;
  Morphism m_bar;
  Morphism n_prime;
  Morphism g;
  Morphism n;
  Morphism h;
  Morphism p;
  std::optional<PolarizedPhase> polarized;

  const ObjectRef& D() const { return g.source_ref(); }
  const ObjectRef& G() const { return g.target_ref(); }
  const ObjectRef& H() const { return h.target_ref(); }
};

/// All matches L -> G in M, in lexicographic order of the assignments.
std::vector<Morphism> enumerate_matches(const ObjectRef& l, const ObjectRef& g,
                                        const CategoryInstance& inst);

/// AGREE step in Gr or Gr/Type. Throws PreconditionError when m is not in M
/// and RuleError when t is not.
RewriteTrace agree_step(const Rule& rule, const Morphism& m,
                        const CategoryInstance& inst);

/// Final pullback complement of (l, m), with the arrows used to build it.
struct Fpbc {
  Morphism n;        // K -> D
  Morphism a;        // D -> G
  Morphism bar_m;    // G -> T(L)
  Morphism t_l;      // T(K) -> T(L)
  Morphism n_prime;  // D -> T(K)
};

/// Throws PreconditionError when m is not in M.
Fpbc fpbc(const Morphism& l, const Morphism& m, const CategoryInstance& inst);

struct FpbcVerdict {
  bool ok = false;
  std::size_t bound = 0;
  /// Candidate squares (D', f, h) examined.
  std::size_t squares_checked = 0;
  std::string counterexample;
};

/// Brute-force check that (l, n, m, a) is a final pullback complement:
/// the square is a pullback, and for every pullback (d, e, f) of m with
/// connected D' of at most `bound` items (nodes plus edges) and every
/// h: K' -> K with l∘h = d there is exactly one g: D' -> D with a∘g = f and
/// g∘e = n∘h. Disconnected D' split into components, so checking connected
/// ones suffices. The default bound is |D| + 1.
FpbcVerdict fpbc_verify(const Morphism& l, const Morphism& m, const Morphism& n,
                        const Morphism& a, const CategoryInstance& inst,
                        std::optional<std::size_t> bound = std::nullopt);

/// SqPO step: fpbc followed by the pushout along r.
RewriteTrace sqpo_step(const Rule& rule, const Morphism& m,
                       const CategoryInstance& inst);

/// PSqPO step for a rule made by make_psqpo_rule and a mono m in Gr.
RewriteTrace psqpo_step(const Rule& rule, const Morphism& m);

/// Runs the step matching the rule's mode.
RewriteTrace apply_rule(const Rule& rule, const Morphism& m,
                        const CategoryInstance& inst);

/// Problems with a trace; empty when all step invariants hold.
std::vector<std::string> trace_violations(const RewriteTrace& trace,
                                          const CategoryInstance& inst);

struct Complement {
  ObjectRef object;
  Morphism inclusion;  // G∖L -> G
};

/// Largest subobject of G disjoint from m(L), keeping the ids of G. The
/// result is cross-checked against the pullback of χ_m along false.
Complement strict_complement(const Morphism& m, const CategoryInstance& inst);
/// Pullback of χ_m along false, with pair ids.
Complement strict_complement_by_classifier(const Morphism& m,
                                           const CategoryInstance& inst);

struct SquareComplement {
  Complement of_left;   // D∖K
  Complement of_right;  // G∖L
  Morphism arrow;       // D∖K -> G∖L, the restriction of the bottom arrow
};

/// Strict complement of `top` in `bottom` for a pullback square whose left
/// and right arrows are in M. Throws PreconditionError otherwise.
SquareComplement complement_of_square(const Square& sq,
                                      const CategoryInstance& inst);

bool is_local_rule(const Rule& rule, const CategoryInstance& inst);
bool is_local_step(const RewriteTrace& trace, const CategoryInstance& inst);

}  // namespace agree
