#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "growth/constructions.hpp"
#include "growth/group.hpp"
#include "growth/growth_engine.hpp"

namespace growth {

// Spectrum scans over enumerated generating sets, the growth-tightness
// comparison on the Baumslag-Solitar free product, and the end-to-end
// pipeline audit chaining every constructive certificate.

struct ScanBounds {
  int max_cardinality = 2;
  int max_length = 2;
  int depth = 8;             // BFS depth for the growth estimates
  int generation_depth = 3;  // witness-product depth for the generation filter
  int shards = 1;            // deterministic partition of the candidate list
  std::size_t cap = 200'000; // candidate-set cap; beyond it the table is partial
};

struct SpectrumRow {
  std::vector<Word> set;
  std::vector<std::int64_t> balls;
  GrowthEstimate estimate;
  std::string dedup_class;  // encoding of the Nielsen-reduced representative
  bool minimum = false;
  bool merged_duplicate = false;  // absorbed rows with an identical ball column
  std::int64_t absorbed = 0;
};

struct SpectrumTable {
  std::string model;
  ScanBounds bounds;
  std::vector<SpectrumRow> rows;  // ascending (point_estimate, set encoding)
  std::int64_t candidates = 0;
  std::int64_t excluded_generation = 0;  // failed the generation witness filter
  std::int64_t dropped_e_one = 0;        // growth rate 1 (theta scans)
  std::int64_t dropped_elliptic = 0;     // no hyperbolic element (theta scans)
  bool partial = false;
};

// Candidate generating sets: canonical, identity-free, deduplicated subsets
// of the nonidentity ball of radius max_length, cardinalities 1 to
// max_cardinality, in deterministic shortlex-tuple order.
std::vector<std::vector<Word>> enumerate_generating_sets(const GroupModel& m,
                                                         int max_cardinality,
                                                         int max_length);

// True when every standard generator lies in the radius-`depth` ball of the
// set. Bounded, so a false result means "no witness found at this depth",
// which the scans log as an exclusion rather than a verdict.
bool generates_whole_group(const GroupModel& m, const std::vector<Word>& set,
                           int depth);

// Bounded Nielsen canonicalization: entries replaced by the shortlex-smaller
// of themselves and their inverses; greedy length-reducing pair moves run
// only for a non-commuting pair in a free group, the one case where the
// tuple is certified to be a basis of the subgroup it generates (so moves
// preserve the ball column). An under-approximation of Aut-equivalence;
// unmerged duplicates are caught afterwards by identical ball columns.
std::vector<Word> nielsen_reduce(const GroupModel& m, std::vector<Word> set);

// Growth spectrum over sets generating the whole group (every standard
// generator must appear in the ball of radius generation_depth of the set).
SpectrumTable xi_scan(const GroupModel& m, const ScanBounds& b);

// Subgroup version: no generation filter, rows whose growth is 1 dropped;
// with require_hyperbolic, sets without a hyperbolic element in S^M are
// dropped as well.
SpectrumTable theta_scan(const GroupModel& m, const ScanBounds& b,
                         bool require_hyperbolic, const ActionConstants& c);

// Ball comparison for the flagship growth-tightness example: H = BS(2,3) * Z
// with S = {a, t, z} against its image under a |-> a^2, t |-> t, z |-> z.
// The strict deficit is reported from the run, never pre-committed.
struct GrowthTightReport {
  std::vector<std::int64_t> balls_S;   // k = 0..depth_S
  std::vector<std::int64_t> balls_fS;  // k = 0..depth_fS
  int depth_S = 0;
  int depth_fS = 0;
  int first_strict_k = -1;       // least k with beta_k(fS) < beta_k(S), -1 if none
  bool trivial_bound_ok = false; // beta_k(fS) <= beta_{2k}(S) wherever computed
  GrowthEstimate est_S;
  GrowthEstimate est_fS;
};

GrowthTightReport growth_tight_experiment(int depth_S = 9, int depth_fS = 8);

struct AuditStage {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Stage chain: hyperbolic-scan, joint-displacement, non-elementarity (the
// free pair), primitive-element, separators, phi-injectivity, lower-bound.
// The first failure stops the chain; its stage name and diagnosis land in
// `failed_stage` / the stage detail.
struct PipelineAudit {
  std::vector<AuditStage> stages;
  bool passed = false;
  std::string failed_stage;
  LowerBoundCertificate lower;  // populated when the chain reaches it
  PhiReport phi;                // the (radius 2, q = 1) check
};

PipelineAudit full_pipeline_audit(const GroupModel& m, const std::vector<Word>& S,
                                  const ActionConstants& c);

}  // namespace growth
