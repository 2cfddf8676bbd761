#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "growth/group.hpp"

namespace growth {

// Sphere-by-sphere enumeration of the ball around the identity in the word
// metric of the given generating set (symmetrized, identity dropped).
struct BallLevels {
  std::vector<std::int64_t> sizes;         // sphere sizes by radius
  std::vector<std::vector<Word>> spheres;  // sorted canonical forms, when kept
  bool truncated = false;                  // stopped early at the element cap
  std::vector<std::int64_t> ball_sizes() const;
  std::vector<std::int64_t> sphere_sizes() const;
};

// `shards` partitions each frontier by word hash before expansion; results
// are merged and re-sorted, so shard count never changes the outcome. When
// the ball would exceed `cap` elements the table stops at the last complete
// radius and is marked truncated.
BallLevels enumerate_levels(const GroupModel& m, const std::vector<Word>& gens,
                            int depth, std::size_t cap = 10'000'000, int shards = 1,
                            bool keep_spheres = true);

// Bracket for the growth rate lim beta_n^(1/n). The upper bound is exact
// (Fekete, from submultiplicativity of ball sizes); the point estimate is the
// deepest sphere ratio; a lower bound appears only when a free-basis
// certificate attaches one.
struct GrowthEstimate {
  int depth = 0;
  double point_estimate = 1.0;    // sqrt(|Sph_n| / |Sph_{n-2}|) at the deepest level
  double certified_upper = 1.0;   // min over n >= 1 of beta_n^(1/n)
  std::int64_t upper_beta = 1;    // the ball count behind certified_upper ...
  int upper_depth = 0;            // ... and the radius achieving it
  bool e_one = false;             // ball stalled or sphere ratio collapsed to 1
  double certified_lower = 0.0;   // meaningful only when has_lower()
  std::string lower_certificate;  // id of the freeness certificate backing it
  bool has_lower() const { return !lower_certificate.empty(); }
};

GrowthEstimate growth_estimate(const BallLevels& levels);

// Records |basis|^(1/p) as a certified lower bound for the growth rate of
// (m, gens). Freeness of the basis must be certified upstream (ping-pong);
// containment basis subset-of S^p is re-checked only when S^p is small enough
// to enumerate. Attaches the bound to `attach_to` when given and enforces the
// lower <= point <= upper ordering there.
double certified_lower_bound(const GroupModel& m, const std::vector<Word>& gens,
                             const std::vector<Word>& basis, int p,
                             bool certificate_passed, const std::string& certificate_id,
                             GrowthEstimate* attach_to = nullptr);

// Cone-type automaton: states are extension signatures over a probe ball, an
// edge per generator that extends geodesically. Path counts reproduce sphere
// sizes whenever geodesic spellings are unique (true for the bundled standard
// sets); always cross-check with `validate` before trusting counts.
struct ConeAutomaton {
  std::vector<std::vector<std::int64_t>> matrix;  // transition multiplicities
  int initial = 0;
  int stabilization_radius = 0;  // last radius where a new cone type appeared
  bool certified = false;        // always false: cutoff equality is heuristic
  std::vector<std::int64_t> sphere_counts(int depth) const;
};

// Throws runtime_error when new cone types still appear at the cutoff radius
// (rerun with a deeper cutoff).
ConeAutomaton build_cone_automaton(const GroupModel& m, const std::vector<Word>& gens,
                                   int build_depth, int probe_depth,
                                   std::size_t cap = 10'000'000);

bool validate_cone_automaton(const ConeAutomaton& aut, const GroupModel& m,
                             const std::vector<Word>& gens, int depth,
                             std::size_t cap = 10'000'000);

// Largest-modulus eigenvalue of a nonnegative integer matrix via repeated
// squaring with normalization; exact enough for 1e-9 comparisons and immune
// to periodicity (which plain power iteration is not).
double spectral_radius(const std::vector<std::vector<std::int64_t>>& matrix);

}  // namespace growth
