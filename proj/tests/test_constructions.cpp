#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "growth/constructions.hpp"
#include "growth/group.hpp"

using namespace growth;

namespace {
ActionConstants demo_constants() { return ActionConstants{0, 1, 2}; }
}  // namespace

TEST_CASE("hyperbolic scan finds a witness or reports elementarity") {
  auto f2 = make_model("f2");
  auto fp = make_model("fp23");
  ActionConstants c = demo_constants();

  Word g = find_hyperbolic_in_power(*f2, parse_set(*f2, {"a", "b"}), c);
  CHECK(f2->format(g) == "a");

  auto just_s = parse_set(*fp, {"s"});
  CHECK_THROWS_AS(find_hyperbolic_in_power(*fp, just_s, c), NoHyperbolicError);
  try {
    find_hyperbolic_in_power(*fp, just_s, c);
  } catch (const NoHyperbolicError& e) {
    CHECK(e.max_power == 2);
  }
  CHECK(!try_find_hyperbolic_in_power(*fp, just_s, c).has_value());

  Word h = find_hyperbolic_in_power(*fp, parse_set(*fp, {"s", "t"}), c);
  CHECK(fp->format(h) == "st");
}

TEST_CASE("displacement witness maximizes movement of the basepoint") {
  auto f2 = make_model("f2");
  auto fp = make_model("fp23");
  ActionConstants c = demo_constants();

  DisplacementWitness w = large_displacement_element(*f2, parse_set(*f2, {"a", "b"}), c);
  CHECK(f2->format(w.g) == "a");
  CHECK(w.L_S == 1);
  CHECK(w.displacement == 1);
  CHECK(w.L_g == 1);
  CHECK(w.power == 1);

  DisplacementWitness w3 =
      large_displacement_element(*f2, parse_set(*f2, {"a", "aaa"}), c);
  CHECK(f2->format(w3.g) == "a^3");
  CHECK(w3.L_S == 3);
  CHECK(w3.power == 1);

  DisplacementWitness wa = large_displacement_element(*f2, parse_set(*f2, {"a", "A"}), c);
  CHECK(f2->format(wa.g) == "a");

  DisplacementWitness wp = large_displacement_element(*fp, parse_set(*fp, {"s", "t"}), c);
  CHECK(fp->format(wp.g) == "st");
  CHECK(wp.power == 2);
  CHECK(wp.L_S == 2);
  CHECK(wp.L_g == 2);
}

TEST_CASE("ping-pong pair construction on the standard basis") {
  auto f2 = make_model("f2");
  ActionConstants c = demo_constants();
  auto S = parse_set(*f2, {"a", "b"});
  DisplacementWitness w = large_displacement_element(*f2, S, c);

  FreePairCertificate pair = build_free_pair(*f2, S, w, c, 4);
  REQUIRE(pair.passed);
  CHECK(f2->format(pair.s) == "b");
  CHECK(pair.k == 60);
  CHECK(static_cast<int>(pair.a.size()) == 60);
  CHECK(static_cast<int>(pair.b.size()) == 62);
  CHECK(pair.lambda_floor == 20);

  auto sym = parse_set(*f2, {"a", "A"});
  DisplacementWitness wa = large_displacement_element(*f2, sym, c);
  CHECK_THROWS_AS(build_free_pair(*f2, sym, wa, c, 3), std::runtime_error);
}

TEST_CASE("primitive element passes all its internal checks") {
  auto f2 = make_model("f2");
  ActionConstants c = demo_constants();
  auto S = parse_set(*f2, {"a", "b"});
  DisplacementWitness w = large_displacement_element(*f2, S, c);
  FreePairCertificate pair = build_free_pair(*f2, S, w, c, 4);

  PrimitiveElement prim = build_primitive_u(*f2, S, pair, c);
  REQUIRE_MESSAGE(prim.passed, prim.failure);
  CHECK(prim.u.size() == 484);
  CHECK(prim.construction == 484);
  CHECK(prim.ax.lambda == 484);
  CHECK(prim.checks.size() == 6);
  for (const auto& [name, ok] : prim.checks) {
    INFO(name);
    CHECK(ok);
  }
}

TEST_CASE("separator family on the rank-two free group") {
  auto f2 = make_model("f2");
  ActionConstants c = demo_constants();
  auto S = parse_set(*f2, {"a", "b"});

  SeparatorSet seps = build_separators(*f2, S, c);
  REQUIRE(seps.passed);
  CHECK(f2->format(seps.g) == "a^4");
  CHECK(seps.power == 4);
  CHECK(static_cast<int>(seps.w.size()) == 240);
  CHECK(seps.context.delta_n == 16);
  CHECK(seps.d_y[0] == 54998);
  REQUIRE(seps.report.count("iii") == 1);
  CHECK(seps.report.at("iii").passed);
  CHECK(seps.report.at("iv").passed);
  CHECK(seps.report.at("b:u4").lhs == 343482);
  CHECK(seps.report.at("b:u4").rhs == 687302);

  // Short prefixes carry empty germs, so the first separator is admissible.
  CHECK(choose_admissible(*f2, f2->parse("a"), f2->parse("b"), seps) == 1);
  // w = u1^-1 has the germ of u1 itself at the basepoint: equivalent, not
  // opposite, so the chooser must skip index 1.
  CHECK(choose_admissible(*f2, f2->invert(seps.u[0]), Word{}, seps) != 1);

  auto ball2 = power_set(*f2, S, 2);
  for (const auto& wp : ball2) CHECK(!forbidden_test(*f2, wp, ball2, seps).forbidden);
  AdequateReport rep = adequate_selection(*f2, ball2, seps, c);
  CHECK(rep.ball == 17);
  CHECK(rep.forbidden == 0);
  CHECK(rep.non_forbidden == 17);
  CHECK(rep.adequate.size() == 17);
}

TEST_CASE("separated products stay injective over small balls") {
  auto f2 = make_model("f2");
  auto fp = make_model("fp23");
  ActionConstants c = demo_constants();

  auto S = parse_set(*f2, {"a", "b"});
  SeparatorSet seps = build_separators(*f2, S, c);
  REQUIRE(seps.passed);
  PhiReport p21 = phi_injectivity_check(*f2, S, seps, c, 2, 1);
  CHECK(p21.injective);
  CHECK(p21.tuples == 17);
  PhiReport p22 = phi_injectivity_check(*f2, S, seps, c, 2, 2);
  CHECK(p22.injective);
  CHECK(p22.tuples == 289);
  CHECK(p22.hausdorff_max <= p22.hausdorff_bound);
  PhiReport p31 = phi_injectivity_check(*f2, S, seps, c, 3, 1);
  CHECK(p31.injective);
  CHECK(p31.tuples == 53);

  auto st = parse_set(*fp, {"s", "t"});
  SeparatorSet fseps = build_separators(*fp, st, c);
  REQUIRE(fseps.passed);
  CHECK(fp->format(fseps.g) == "stst");
  CHECK(fseps.power == 4);
  PhiReport q21 = phi_injectivity_check(*fp, st, fseps, c, 2, 1);
  CHECK(q21.injective);
  CHECK(q21.ball == 8);
  PhiReport q22 = phi_injectivity_check(*fp, st, fseps, c, 2, 2);
  CHECK(q22.injective);
  CHECK(q22.tuples == 64);
  PhiReport q31 = phi_injectivity_check(*fp, st, fseps, c, 3, 1);
  CHECK(q31.injective);
  CHECK(q31.tuples == 14);
}

TEST_CASE("forbidden test fires on a hand-shrunk separator fixture") {
  auto f2 = make_model("f2");
  auto S = parse_set(*f2, {"a", "b"});

  SeparatorSet tiny;
  tiny.context.S = S;
  tiny.context.y = f2->base();
  tiny.context.delta_n = 1;
  tiny.u[0] = f2->parse("aaa");
  tiny.u[1] = f2->parse("bbb");
  tiny.u[2] = f2->parse("AAA");
  tiny.u[3] = f2->parse("BBB");
  for (int i = 0; i < 4; ++i) {
    tiny.u_y[i] = f2->act(tiny.u[i], tiny.context.y);
    tiny.uinv_y[i] = f2->act(f2->invert(tiny.u[i]), tiny.context.y);
    tiny.d_y[i] = f2->dist(tiny.context.y, tiny.u_y[i]);
  }

  ForbiddenVerdict v = forbidden_test(*f2, Word{}, power_set(*f2, S, 3), tiny);
  REQUIRE(v.forbidden);
  CHECK(f2->format(v.w) == "a^3");
  CHECK(v.separator == 1);
  CHECK(v.lhs5 == 0);
  CHECK(v.rhs == 3);
}

TEST_CASE("end-to-end lower bound certificate on the standard basis") {
  auto f2 = make_model("f2");
  ActionConstants c = demo_constants();
  auto S = parse_set(*f2, {"a", "b"});

  LowerBoundCertificate cert = lower_bound_audit(*f2, S, c, 4);
  REQUIRE_MESSAGE(cert.passed, cert.failure);
  CHECK(cert.u.size() == 964);
  CHECK(cert.W.size() == 2);
  CHECK(cert.p_formula == 33762);
  CHECK(cert.p == 33762);
  CHECK(cert.implied == doctest::Approx(std::pow(2.0, 1.0 / 33762.0)).epsilon(1e-12));
  CHECK(cert.weak ==
        doctest::Approx((1.0 / 33762.0) * std::pow(2.0, 1.0 / 33762.0)).epsilon(1e-12));
  CHECK(cert.estimate.has_lower());
  CHECK(cert.estimate.certified_lower == cert.implied);
  CHECK(cert.estimate.point_estimate > cert.implied);
}
