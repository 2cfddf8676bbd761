#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "growth/experiments.hpp"

using namespace growth;

namespace {
ActionConstants demo_constants() { return ActionConstants{0, 1, 2}; }
}  // namespace

TEST_CASE("candidate enumeration and the generation filter") {
  auto f2 = make_model("f2");
  auto sets = enumerate_generating_sets(*f2, 2, 2);
  CHECK(sets.size() == 136);
  CHECK(generates_whole_group(*f2, parse_set(*f2, {"a", "b"}), 3));
  CHECK(!generates_whole_group(*f2, parse_set(*f2, {"a"}), 3));
  CHECK(!generates_whole_group(*f2, parse_set(*f2, {"ab", "ba"}), 3));
}

TEST_CASE("Nielsen canonicalization collapses basis pairs only") {
  auto f2 = make_model("f2");
  auto fp = make_model("fp23");

  auto basis = nielsen_reduce(*f2, parse_set(*f2, {"a", "b"}));
  CHECK(nielsen_reduce(*f2, parse_set(*f2, {"a", "ab"})) == basis);
  CHECK(nielsen_reduce(*f2, parse_set(*f2, {"a", "B"})) == basis);

  auto stuck = nielsen_reduce(*f2, parse_set(*f2, {"ab", "ba"}));
  CHECK(stuck.size() == 2);
  CHECK(stuck != basis);

  // Pair moves run only for a non-commuting pair in a free group; everything
  // else folds inverses and sorts, so these keep their cardinality and words.
  auto triple = nielsen_reduce(*f2, parse_set(*f2, {"a", "b", "ab"}));
  CHECK(triple.size() == 3);
  auto commuting = nielsen_reduce(*f2, parse_set(*f2, {"a", "aaa"}));
  CHECK(commuting.size() == 2);
  CHECK(commuting[1] == f2->parse("aaa"));
  auto product_pair = nielsen_reduce(*fp, parse_set(*fp, {"s", "st"}));
  CHECK(product_pair.size() == 2);
  CHECK(product_pair != parse_set(*fp, {"s", "t"}));
}

TEST_CASE("generating-set spectrum over pairs of short words") {
  auto f2 = make_model("f2");
  ScanBounds b;
  b.max_cardinality = 2;
  b.max_length = 2;
  b.depth = 8;
  SpectrumTable t = xi_scan(*f2, b);
  CHECK(t.candidates == 136);
  REQUIRE(t.rows.size() == 1);  // every generating pair is a basis
  CHECK(t.rows.front().minimum);
  CHECK(t.rows.front().estimate.point_estimate == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(t.rows.front().balls[8] == 2 * 6561 - 1);
  for (const auto& row : t.rows)
    CHECK(row.estimate.certified_upper >= 3.0 - 1e-9);
}

TEST_CASE("cardinality three admits rows above the basis rate") {
  auto f2 = make_model("f2");
  ScanBounds b;
  b.max_cardinality = 3;
  b.max_length = 2;
  b.depth = 4;
  SpectrumTable t = xi_scan(*f2, b);
  bool fast = false;
  for (const auto& row : t.rows)
    if (row.estimate.point_estimate > 3.0 + 1e-9) fast = true;
  CHECK(fast);
}

TEST_CASE("scan tables are identical across shard counts") {
  auto f2 = make_model("f2");
  ScanBounds b1, b8;
  b1.max_cardinality = b8.max_cardinality = 2;
  b1.max_length = b8.max_length = 2;
  b1.depth = b8.depth = 6;
  b8.shards = 8;
  SpectrumTable t1 = xi_scan(*f2, b1);
  SpectrumTable t8 = xi_scan(*f2, b8);
  REQUIRE(t1.rows.size() == t8.rows.size());
  for (std::size_t i = 0; i < t1.rows.size(); ++i) {
    CHECK(t1.rows[i].set == t8.rows[i].set);
    CHECK(t1.rows[i].balls == t8.rows[i].balls);
  }
}

TEST_CASE("element spectrum drops rate-one sets and merges equal columns") {
  auto f2 = make_model("f2");
  auto fp = make_model("fp23");
  ActionConstants c = demo_constants();

  ScanBounds b;
  b.max_cardinality = 2;
  b.max_length = 2;
  b.depth = 8;
  SpectrumTable t = theta_scan(*f2, b, false, c);
  // 16 rate-one singletons, 12 common-power pairs, 4 inverse pairs.
  CHECK(t.dropped_e_one == 32);
  // Every surviving pair freely generates, so all columns agree and merge.
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows.front().merged_duplicate);
  CHECK(t.rows.front().absorbed == 17);
  CHECK(t.rows.front().estimate.point_estimate == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(t.rows.front().balls[8] == 2 * 6561 - 1);

  ScanBounds b1;
  b1.max_cardinality = 1;
  b1.max_length = 1;
  b1.depth = 6;
  SpectrumTable tf = theta_scan(*fp, b1, true, c);
  CHECK(tf.rows.empty());
  CHECK(tf.dropped_elliptic == 3);  // {s}, {t}, {t^2}: all torsion singletons
}

TEST_CASE("endomorphism image loses growth while the doubled bound holds") {
  GrowthTightReport rep = growth_tight_experiment(9, 8);
  CHECK(rep.balls_S[8] == 536855);
  CHECK(rep.balls_fS[8] == 513553);
  CHECK(rep.first_strict_k == 4);
  CHECK(rep.trivial_bound_ok);
  CHECK(rep.est_fS.point_estimate <= rep.est_S.point_estimate + 1e-9);
}

TEST_CASE("full pipeline audit passes on a basis and diagnoses elementarity") {
  auto f2 = make_model("f2");
  ActionConstants c = demo_constants();

  PipelineAudit audit = full_pipeline_audit(*f2, parse_set(*f2, {"a", "b"}), c);
  REQUIRE_MESSAGE(audit.passed, audit.failed_stage);
  CHECK(audit.stages.size() == 7);
  CHECK(audit.lower.passed);
  CHECK(audit.phi.injective);

  PipelineAudit bad = full_pipeline_audit(*f2, parse_set(*f2, {"a", "A"}), c);
  CHECK(!bad.passed);
  CHECK(bad.failed_stage == "non-elementarity");
  CHECK(!bad.stages.back().detail.empty());
}
