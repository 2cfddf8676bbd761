#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "growth/limit_lab.hpp"

using namespace growth;

TEST_CASE("word templates instantiate with linear exponents") {
  auto f2 = make_model("f2");
  WordTemplate t = parse_template(*f2, "A^n b a^n");
  CHECK(t.blocks.size() == 3);
  CHECK(f2->format(t.instantiate(*f2, 3)) == "A^3ba^3");

  CHECK(f2->format(parse_template(*f2, "a^2n").instantiate(*f2, 4)) == "a^8");
  CHECK(f2->format(parse_template(*f2, "a^-n").instantiate(*f2, 2)) == "A^2");
  CHECK_THROWS_AS(parse_template(*f2, "a^x"), std::invalid_argument);
}

TEST_CASE("geometric sampling of sequence indices") {
  CHECK(geometric_sample(10) == std::vector<std::int64_t>{1, 2, 4, 8, 10});
  CHECK(geometric_sample(8) == std::vector<std::int64_t>{1, 2, 4, 8});
  CHECK(geometric_sample(1) == std::vector<std::int64_t>{1});
}

TEST_CASE("stable kernel scan classifies word fates") {
  auto f1 = make_model("f1");
  auto f2 = make_model("f2");
  auto fp22 = make_model("fp22");

  SUBCASE("abelianization-like target kills the commutator") {
    HomomorphismSequence seq = make_sequence(*f2, *f1, {"a", "a^n"}, true);
    StableKernelReport rep = stable_kernel_scan(seq, 4, 8);
    Word comm = f2->parse("abAB");
    bool found = false;
    for (const auto& cls : rep.words) {
      if (cls.word == comm) {
        found = true;
        CHECK(cls.fate == WordFate::EventuallyTrivial);
        CHECK(cls.flips == 0);
      }
      if (cls.word == f2->parse("aB")) {
        // a b^-1 maps to a^(1-n): trivial at n = 1 only, then revives.
        CHECK(cls.fate == WordFate::Undecided);
        CHECK(cls.flips == 1);
        CHECK(cls.last_flip_n == 2);
      }
    }
    CHECK(found);
    CHECK(rep.claims_at_horizon);
  }

  SUBCASE("conjugation sequence is injective at every index") {
    HomomorphismSequence seq = make_sequence(*f2, *f2, {"a", "a^n b a^-n"}, true);
    StableKernelReport rep = stable_kernel_scan(seq, 3, 8);
    CHECK(rep.words.size() == 52);
    for (const auto& cls : rep.words)
      CHECK(cls.fate == WordFate::EventuallyNontrivial);
  }

  SUBCASE("torsion target flips parity of a single letter") {
    HomomorphismSequence seq = make_sequence(*f1, *fp22, {"s^n"}, false);
    StableKernelReport rep = stable_kernel_scan(seq, 2, 8);
    CHECK(rep.words.size() == 4);
    for (const auto& cls : rep.words) {
      if (cls.word.size() == 1) {
        CHECK(cls.fate == WordFate::Undecided);
        CHECK(cls.flips == 1);
        CHECK(cls.last_flip_n == 2);
      } else {
        CHECK(cls.fate == WordFate::EventuallyTrivial);
      }
    }
  }
}

TEST_CASE("factoring through the stable kernel") {
  auto f1 = make_model("f1");
  auto f2 = make_model("f2");

  HomomorphismSequence ab = make_sequence(*f2, *f1, {"a", "a^n"}, true);
  FactoringReport r1 = factoring_check(ab, {f2->parse("abAB")}, 8);
  REQUIRE(r1.n0.has_value());
  CHECK(*r1.n0 == 1);

  HomomorphismSequence conj = make_sequence(*f2, *f2, {"a", "a^n b a^-n"}, true);
  FactoringReport r2 = factoring_check(conj, {f2->parse("baBAA")}, 8);
  CHECK(!r2.n0.has_value());

  FactoringReport r3 = factoring_check(conj, {}, 8);
  REQUIRE(r3.n0.has_value());
  CHECK(*r3.n0 == 1);
}

TEST_CASE("growth columns along a converging sequence") {
  auto f2 = make_model("f2");
  auto fp22 = make_model("fp22");
  auto S = parse_set(*f2, {"a", "b"});

  SUBCASE("constant identity sequence matches the limit exactly") {
    HomomorphismSequence id_seq = make_sequence(*f2, *f2, {"a", "b"}, true);
    ContinuityReport rep = growth_continuity_probe(id_seq, S, f2.get(), S, 8, 6);
    for (const auto& row : rep.rows) {
      CHECK(row.inequality_ok);
      CHECK(row.balls == rep.limit_balls);
      CHECK(row.estimate.point_estimate == rep.limit_estimate.point_estimate);
    }
  }

  SUBCASE("conjugation preserves every ball size") {
    HomomorphismSequence conj = make_sequence(*f2, *f2, {"a", "a^n b a^-n"}, true);
    ContinuityReport rep = growth_continuity_probe(conj, S, f2.get(), S, 8, 6);
    for (const auto& row : rep.rows) {
      CHECK(row.inequality_ok);
      CHECK(row.balls == rep.limit_balls);
    }
  }

  SUBCASE("a proper quotient shows a strict deficit") {
    HomomorphismSequence quot = make_sequence(*f2, *fp22, {"s", "t^n"}, true);
    auto eta = parse_set(*f2, {"a", "b"});
    ContinuityReport rep = growth_continuity_probe(quot, S, f2.get(), eta, 4, 6);
    REQUIRE(!rep.rows.empty());
    CHECK(rep.rows[0].balls[1] == 3);  // s and t are involutions downstairs
    CHECK(rep.limit_balls[1] == 5);
    bool strict = false;
    for (const auto& row : rep.rows)
      for (std::size_t k = 0; k < row.balls.size(); ++k)
        if (row.balls[k] < rep.limit_balls[k]) strict = true;
    CHECK(strict);

    CHECK_THROWS_AS(growth_continuity_probe(quot, S, nullptr, eta, 4, 6),
                    std::invalid_argument);
  }
}
