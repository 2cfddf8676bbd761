#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "growth/group.hpp"
#include "growth/growth_engine.hpp"

using namespace growth;

TEST_CASE("free group balls match the closed form 2*3^n - 1") {
  auto f2 = make_model("f2");
  auto gens = parse_set(*f2, {"a", "b"});
  BallLevels lv = enumerate_levels(*f2, gens, 10);
  REQUIRE(!lv.truncated);
  auto balls = lv.ball_sizes();
  REQUIRE(balls.size() == 11);
  std::int64_t pw = 1;
  for (int n = 0; n <= 10; ++n) {
    CHECK(balls[n] == 2 * pw - 1);
    pw *= 3;
  }
}

TEST_CASE("element cap truncates after the last complete radius") {
  auto f2 = make_model("f2");
  auto gens = parse_set(*f2, {"a", "b"});
  BallLevels trunc = enumerate_levels(*f2, gens, 5, 40);
  CHECK(trunc.truncated);
  CHECK(trunc.sizes.size() == 3);
  CHECK(trunc.ball_sizes().back() == 17);
}

TEST_CASE("shards never change the enumeration") {
  auto f2 = make_model("f2");
  auto gens = parse_set(*f2, {"a", "b"});
  BallLevels one = enumerate_levels(*f2, gens, 6);
  BallLevels eight = enumerate_levels(*f2, gens, 6, 10'000'000, 8);
  CHECK(one.sizes == eight.sizes);
  CHECK(one.spheres == eight.spheres);
}

TEST_CASE("two-radius point estimate and Fekete upper bracket the rate") {
  auto f2 = make_model("f2");
  auto gens = parse_set(*f2, {"a", "b"});
  GrowthEstimate est = growth_estimate(enumerate_levels(*f2, gens, 10));
  CHECK(est.point_estimate == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(est.certified_upper >= 3.0);
  CHECK(est.certified_upper <= 3.3);
  CHECK(est.upper_depth == 10);
  CHECK(est.upper_beta == 2 * 59049 - 1);
  CHECK(!est.e_one);

  auto fp23 = make_model("fp23");
  GrowthEstimate fpe =
      growth_estimate(enumerate_levels(*fp23, parse_set(*fp23, {"s", "t"}), 12));
  CHECK(fpe.point_estimate == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("rate-one marker fires for linear and finite growth") {
  auto f2 = make_model("f2");
  GrowthEstimate zest =
      growth_estimate(enumerate_levels(*f2, parse_set(*f2, {"a"}), 6));
  CHECK(zest.e_one);
  CHECK(zest.point_estimate == doctest::Approx(1.0).epsilon(1e-12));

  auto z2 = make_model("fp22");
  GrowthEstimate fin =
      growth_estimate(enumerate_levels(*z2, parse_set(*z2, {"s"}), 4));
  CHECK(fin.e_one);
  CHECK(fin.point_estimate == 1.0);
}

TEST_CASE("finite groups stall the sphere table") {
  auto z6ish = make_model("fp23");
  BallLevels fz = enumerate_levels(*z6ish, parse_set(*z6ish, {"s"}), 5);
  CHECK(fz.sizes.size() == 3);
  CHECK(fz.sizes[2] == 0);
}

TEST_CASE("free product spheres at small depth") {
  auto fp23 = make_model("fp23");
  auto bp = enumerate_levels(*fp23, parse_set(*fp23, {"s", "t"}), 3).ball_sizes();
  CHECK(bp[0] == 1);
  CHECK(bp[1] == 4);
  CHECK(bp[2] == 8);
  CHECK(bp[3] == 14);
}

TEST_CASE("certified lower bounds attach and validate their inputs") {
  auto f2 = make_model("f2");
  auto gens = parse_set(*f2, {"a", "b"});
  GrowthEstimate est = growth_estimate(enumerate_levels(*f2, gens, 10));

  double lb = certified_lower_bound(*f2, gens, gens, 1, true, "cert-demo", &est);
  CHECK(lb == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(est.has_lower());
  CHECK(est.certified_lower == lb);

  auto pair = parse_set(*f2, {"aaaa", "baaaab"});
  double lb2 = certified_lower_bound(*f2, gens, pair, 122, true, "cert-pair");
  CHECK(lb2 == doctest::Approx(std::pow(2.0, 1.0 / 122.0)).epsilon(1e-12));

  CHECK_THROWS_AS(certified_lower_bound(*f2, gens, {}, 1, true, "x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(certified_lower_bound(*f2, gens, gens, 1, false, "x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(certified_lower_bound(*f2, gens, {f2->parse("ababab")}, 2, true, "x"),
                  std::invalid_argument);
}

TEST_CASE("cone automata reproduce sphere counts and spectral radii") {
  auto f2 = make_model("f2");
  auto gens = parse_set(*f2, {"a", "b"});
  ConeAutomaton aut = build_cone_automaton(*f2, gens, 4, 2);
  CHECK(aut.matrix.size() == 5);
  CHECK(aut.stabilization_radius == 1);
  CHECK(!aut.certified);
  CHECK(validate_cone_automaton(aut, *f2, gens, 9));
  CHECK(spectral_radius(aut.matrix) == doctest::Approx(3.0).epsilon(1e-9));

  auto fp23 = make_model("fp23");
  auto st = parse_set(*fp23, {"s", "t"});
  ConeAutomaton fpa = build_cone_automaton(*fp23, st, 6, 3);
  CHECK(validate_cone_automaton(fpa, *fp23, st, 12));
  CHECK(spectral_radius(fpa.matrix) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  ConeAutomaton zaut = build_cone_automaton(*f2, parse_set(*f2, {"a"}), 3, 2);
  CHECK(spectral_radius(zaut.matrix) == doctest::Approx(1.0).epsilon(1e-9));
}
