#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growth/group.hpp"
#include "growth/growth_engine.hpp"

namespace growth {

// Homomorphism sequences given by per-generator word templates with an
// n-exponent placeholder, their stable-kernel scans at a finite horizon, the
// factoring check for a relation list, and the empirical growth-continuity
// probe against a user-supplied limit model. Horizon-bounded classifications
// are claims, never proofs; the reports say so.

// One run of equal letters with an exponent that may scale with n: "a^3",
// "a^n", "a^-n", "a^2n". Capital letters spell inverses, as in parse().
struct TemplateBlock {
  int gen = 0;
  bool pos = true;
  std::int64_t coefficient = 1;
  bool times_n = false;
};

struct WordTemplate {
  std::vector<TemplateBlock> blocks;
  Word instantiate(const GroupModel& target, std::int64_t n) const;
};

WordTemplate parse_template(const GroupModel& target, const std::string& text);

// f_n: F_l -> target, one template per source generator. Surjectivity of the
// f_n is an assumption the caller declares; nothing verifies it.
struct HomomorphismSequence {
  const GroupModel* source = nullptr;
  const GroupModel* target = nullptr;
  std::vector<WordTemplate> templates;
  bool surjective_assumed = false;
  Homomorphism at(std::int64_t n) const;
};

HomomorphismSequence make_sequence(const GroupModel& source, const GroupModel& target,
                                   const std::vector<std::string>& rules,
                                   bool surjective_assumed = false);

// Geometric sample 1, 2, 4, ..., always including the horizon itself.
std::vector<std::int64_t> geometric_sample(std::int64_t horizon);

enum class WordFate { EventuallyTrivial, EventuallyNontrivial, Undecided };

std::string to_string(WordFate fate);

// `flips` counts alternations of the dead/alive status along the sample;
// any flip at all demotes the word to Undecided, and `last_flip_n` then
// holds the sample index where the status last changed.
struct WordClassification {
  Word word;
  WordFate fate = WordFate::Undecided;
  std::int64_t flips = 0;
  std::int64_t last_flip_n = 0;
};

struct StableKernelReport {
  int length_cap = 0;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> sampled;
  std::vector<WordClassification> words;
  // Classifications hold at the sampled horizon only.
  bool claims_at_horizon = true;
};

// Classifies every nonempty reduced source word of length <= length_cap by
// evaluating f_n across the geometric sample.
StableKernelReport stable_kernel_scan(const HomomorphismSequence& seq, int length_cap,
                                      std::int64_t horizon);

struct FactoringReport {
  std::vector<Word> relations;
  std::vector<std::int64_t> sampled;
  // Least sampled n such that every relation dies under f_n from there
  // through the horizon; empty when no sampled tail works.
  std::optional<std::int64_t> n0;
};

FactoringReport factoring_check(const HomomorphismSequence& seq,
                                const std::vector<Word>& relations,
                                std::int64_t horizon);

struct ContinuityRow {
  std::int64_t n = 0;
  std::vector<std::int64_t> balls;  // beta_k(target, f_n(S)), k = 0..depth
  GrowthEstimate estimate;
  bool inequality_ok = false;  // beta_k(f_n S) <= beta_k(limit, eta S), all k
};

struct ContinuityReport {
  int depth = 0;
  std::vector<std::int64_t> limit_balls;  // beta_k(limit, eta S)
  GrowthEstimate limit_estimate;
  std::vector<ContinuityRow> rows;
};

// Compares ball growth of the pushed-forward set f_n(S) against the supplied
// limit model across the sample. Only the one-sided surjection inequality is
// asserted (violation throws logic_error); convergence of the point
// estimates is left to the reader of the table.
ContinuityReport growth_continuity_probe(const HomomorphismSequence& seq,
                                         const std::vector<Word>& S,
                                         const GroupModel* limit_model,
                                         const std::vector<Word>& eta_S,
                                         std::int64_t horizon, int depth);

}  // namespace growth
