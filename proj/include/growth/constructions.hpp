#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "growth/growth_engine.hpp"
#include "growth/space.hpp"

namespace growth {

// Constructive pipeline: displacement search, free pairs, the primitive
// element u, separators, germ admissibility, the forbidden/adequate pruning,
// the concatenation map on tuples, and the end-to-end lower-bound audit.
// Every certificate carries the exact integer quantities it compared, so a
// failed run reports both sides of the first broken inequality.

// Raised when no power up to M contains a hyperbolic element: either the set
// generates an elementary subgroup or the configured M is too small.
struct NoHyperbolicError : std::runtime_error {
  std::int64_t max_power = 0;
  std::int64_t scanned = 0;
  NoHyperbolicError(std::int64_t max_power_, std::int64_t scanned_)
      : std::runtime_error("no hyperbolic element up to power " +
                           std::to_string(max_power_) + " (scanned " +
                           std::to_string(scanned_) +
                           " elements): elementary set or M too small"),
        max_power(max_power_),
        scanned(scanned_) {}
};

// First hyperbolic element scanning S^1, S^2, ..., S^M in shortlex order.
Word find_hyperbolic_in_power(const GroupModel& m, const std::vector<Word>& S,
                              const ActionConstants& c);
std::optional<Word> try_find_hyperbolic_in_power(const GroupModel& m,
                                                 const std::vector<Word>& S,
                                                 const ActionConstants& c);

// Hyperbolic g with displacement at the joint minimizer x of S within 8 delta
// of L(S) and translation length within 16 delta of that displacement; x lies
// within 20 delta of the axis. At delta = 0 all three are exact.
struct DisplacementWitness {
  Word g;
  SpacePoint x;
  std::int64_t L_S = 0;
  std::int64_t displacement = 0;
  std::int64_t L_g = 0;
  std::int64_t power = 0;  // g was found in S^power (1 or 2)
};

// Scans S^1 then S^2; within the first power holding a qualifying element,
// prefers maximal displacement and breaks ties shortlex. Requires L(S) >= 1;
// throws when S^2 holds no qualifying element (use find_hyperbolic_in_power
// with a larger power to diagnose).
DisplacementWitness large_displacement_element(const GroupModel& m,
                                               const std::vector<Word>& S,
                                               const ActionConstants& c);

// Rank-2 freeness certificate for (g^k, s g^k s^-1): every nonempty reduced
// word of length <= depth in the pair is non-identity and hyperbolic with
// translation length >= lambda_floor = 10 (2 D L(g) + 100 delta).
struct FreePairCertificate {
  Word g;
  Word s;
  Word a;  // g^k
  Word b;  // s g^k s^-1
  SpacePoint x;
  std::int64_t k = 0;
  std::int64_t power = 0;  // g lies in S^power
  std::int64_t L_g = 0;
  std::int64_t lambda_floor = 0;
  int depth = 0;
  bool passed = false;
  std::string failure;  // first broken relation or lambda bound, if any
};

// Picks the first s in `conjugators` (canonical order) whose conjugate of g
// has an axis distinct from g's; throws when every axis is parallel (the
// subgroup is then virtually cyclic).
FreePairCertificate build_free_pair(const GroupModel& m,
                                    const std::vector<Word>& conjugators,
                                    const DisplacementWitness& w,
                                    const ActionConstants& c, int depth);

// u = g^k (s g^2k s^-1) g^3k (s g^k s^-1) g^k with its audit trail. `checks`
// maps each verified property to its outcome; `lhs`/`rhs` of the first
// failure land in `failure`.
struct PrimitiveElement {
  Word u;
  Axis ax;
  std::int64_t power = 0;        // u lies in S^(m * power)
  std::int64_t construction = 0; // S-letter budget of the build, 8 k power + 4
  std::map<std::string, bool> checks;
  bool passed = false;
  std::string failure;
};

// Verifies, exhaustively where a ball is involved: the S^m word-length audit;
// lambda(u) >= 10 (2 D L(g) + 100 delta); the witness point sits on u's axis
// (within 50 delta); no element of the radius-ball_radius ball outside the
// powers of u preserves u's axis; the canonical form of u is not a proper
// power; and the pointwise axis stabilizer in the ball is trivial (so its
// order is within the WPD count D).
PrimitiveElement build_primitive_u(const GroupModel& m, const std::vector<Word>& S,
                                   const FreePairCertificate& pair,
                                   const ActionConstants& c, int ball_radius = 3);

// One verified inequality with both compared sides; `note` names indices or
// the witness word where one applies.
struct PropertyCheck {
  bool passed = false;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::string note;
};

// Four separator words with mutually opposite germs at the context basepoint.
// Built over the powered set S^(2DM); the report keys are "i:*" for the eight
// germ identities, "opposite:*" for the six germ pairs, "ii:*" for the
// translation-length and axis bounds, "iii" for the small-cancellation sweep,
// "b:*" for the word-length audits, and "iv" (kernel separators), which never
// applies to the exact bundled models.
struct SeparatorSet {
  GermContext context;
  Word g;
  Word s;
  Word w;  // g^k
  Word z;  // s g^k s^-1
  std::array<Word, 4> u{};
  std::array<Germ, 4> gamma{};
  std::int64_t b = 0;
  std::int64_t power = 0;  // g lies in S^power
  // Cached orbit data reused by every admissibility test: u_i y, u_i^-1 y,
  // and d(y, u_i y) (= d(y, u_i^-1 y)).
  std::array<SpacePoint, 4> u_y{};
  std::array<SpacePoint, 4> uinv_y{};
  std::array<std::int64_t, 4> d_y{};
  std::map<std::string, PropertyCheck> report;
  bool passed = false;
};

// Throws a runtime_error naming the property, the indices, and the witness
// word as soon as any sub-check fails; `cancel_radius` bounds the exhaustive
// small-cancellation sweep over the S-ball.
SeparatorSet build_separators(const GroupModel& m, const std::vector<Word>& S,
                              const ActionConstants& c, int cancel_radius = 3,
                              int pair_depth = 2);

// Lowest index in 1..4 of a separator admissible for the pair (w, wp): the
// germ of [y, w y] at w y is opposite the germ of [w y, w u y], and
// symmetrically for wp^-1 on the other side of u. Orbits shorter than
// 10 delta_n carry an empty germ and accept any separator. The returned
// separator also satisfies the concatenation bound
// d(y, w u y) >= d(y, w y) + d(w y, w u y) - 4 delta_n, which is re-checked.
int choose_admissible(const GroupModel& m, const Word& w, const Word& wp,
                      const SeparatorSet& seps);

// Outcome of the forbidden test for one element wp: whether some ball element
// w and admissible separator u put h(w) y within one fifth of |y - u y| of
// h(wp u) y. The witness fields hold the shortlex-least such w.
struct ForbiddenVerdict {
  bool forbidden = false;
  Word w;
  int separator = 0;       // 1-based separator index used
  std::int64_t lhs5 = 0;   // 5 d(w y, wp u y)
  std::int64_t rhs = 0;    // d(y, u y)
};

ForbiddenVerdict forbidden_test(const GroupModel& m, const Word& wp,
                                const std::vector<Word>& ball,
                                const SeparatorSet& seps);

// Non-forbidden elements pruned to one representative per right coset of each
// pointwise axis stabilizer F(u_i), greedily in shortlex order. Asserts the
// forbidden ratio (#forbidden <= D #non-forbidden) and the adequate floor
// (|ball| <= D^4 (D+1) #adequate); violations throw logic_error since they
// indicate misconfigured constants.
struct AdequateReport {
  std::vector<Word> adequate;
  std::int64_t ball = 0;
  std::int64_t forbidden = 0;
  std::int64_t non_forbidden = 0;
};

AdequateReport adequate_selection(const GroupModel& m, const std::vector<Word>& ball,
                                  const SeparatorSet& seps, const ActionConstants& c);

// Concatenation w_1 u_(1) w_2 u_(2) ... w_q u_(q) in canonical form, each
// separator chosen admissible for the pair it joins (the last one one-sided).
Word phi_map(const GroupModel& m, const std::vector<Word>& tuple,
             const SeparatorSet& seps);

struct PhiReport {
  int radius = 0;
  int q = 0;
  std::int64_t ball = 0;
  std::int64_t adequate = 0;
  std::int64_t tuples = 0;
  bool injective = false;
  std::int64_t hausdorff_max = 0;    // worst sampled broken-vs-straight gap
  std::int64_t hausdorff_bound = 0;  // 2 delta_n + 100 delta
  std::int64_t sampled = 0;
};

// Enumerates every q-tuple of adequate elements of the radius-`radius` ball,
// asserts all images distinct (collision throws logic_error naming the two
// tuples) and checks the broken-geodesic Hausdorff bound on the first
// `samples` tuples.
PhiReport phi_injectivity_check(const GroupModel& m, const std::vector<Word>& S,
                                const SeparatorSet& seps, const ActionConstants& c,
                                int radius, int q, std::int64_t samples = 32);

// End-to-end lower bound e(G,S) >= |W|^(1/p): W is a maximal coset-separated
// subset of S, u comes from the primitive-element pipeline over S^(MD),
// U = u^(20 D) and B = {w U w^-1 : w in W} is certified free by exhaustive
// ping-pong to `depth`. The estimate carries the attached certified lower
// bound; `weak` is the closed-form floor A |S|^A it dominates.
struct LowerBoundCertificate {
  std::vector<Word> W;
  Word u;
  Word U;
  std::vector<Word> B;
  int depth = 0;
  bool passed = false;
  std::string failure;
  std::int64_t p = 0;       // exponent actually certified (>= the formula's
                            // 20 M D^2 m + 2 only if the build forced it)
  std::int64_t p_formula = 0;
  double implied = 0.0;     // |W|^(1/p)
  double weak = 0.0;        // A |S|^A
  std::string certificate_id;
  GrowthEstimate estimate;
};

LowerBoundCertificate lower_bound_audit(const GroupModel& m, const std::vector<Word>& S,
                                        const ActionConstants& c, int depth,
                                        int ball_depth = 8);

}  // namespace growth
