#include "doctest.h"

#include <stdexcept>

#include "growth/space.hpp"

using namespace growth;

namespace {
FreeGroupModel& F2() {
  static FreeGroupModel m(2);
  return m;
}
Word W(const char* s) { return F2().parse(s); }
SpacePoint P(const char* s) { return SpacePoint{0, F2().parse(s)}; }
}  // namespace

TEST_CASE("translation lengths on the free tree") {
  auto& f2 = F2();
  CHECK(translation_length(f2, W("a")) == 1);
  CHECK(translation_length(f2, W("ab")) == 2);
  CHECK(translation_length(f2, W("abA")) == 1);
  CHECK(classify(f2, W("1")) == IsometryClass::Elliptic);
  CHECK(classify(f2, W("ab")) == IsometryClass::Hyperbolic);
  auto md = min_displacement_element(f2, W("abA"));
  CHECK(md.L == 1);
  CHECK(md.witness.at == W("a"));
}

TEST_CASE("axes are parametrized by arc length") {
  auto& f2 = F2();
  Axis ax = axis(f2, W("ab"));
  CHECK(ax.lambda == 2);
  CHECK(axis_point(f2, ax, 4).at == W("abab"));
  CHECK(axis_point(f2, ax, -3).at == W("BAB"));
}

TEST_CASE("joint displacement finds the min-max vertex") {
  auto& f2 = F2();
  CHECK(joint_displacement(f2, {W("a"), W("b")}).value == 1);
  CHECK(joint_displacement(f2, {W("abA"), W("b")}).value == 3);
  FreeProductModel fp23({2, 3});
  CHECK(classify(fp23, fp23.parse("s")) == IsometryClass::Elliptic);
  CHECK(translation_length(fp23, fp23.parse("st")) == 2);
  CHECK(joint_displacement(fp23, {fp23.parse("s"), fp23.parse("t")}).value == 2);
}

TEST_CASE("axis overlaps classify as disjoint, crossing, or parallel") {
  auto& f2 = F2();
  auto o1 = axes_overlap(f2, W("ab"), W("ba"));
  CHECK(o1.kind == OverlapKind::Crossing);
  CHECK(o1.diameter == 0);
  auto o2 = axes_overlap(f2, W("ab"), W("abab"));
  CHECK(o2.kind == OverlapKind::Parallel);
  auto o3 = axes_overlap(f2, W("a"), W("baB"));
  CHECK(o3.kind == OverlapKind::Disjoint);
  CHECK(o3.gap == 1);
  auto o4 = axes_overlap(f2, W("a"), W("a^3 b a^-3"));
  CHECK(o4.kind == OverlapKind::Crossing);
  CHECK(o4.diameter == 0);
  auto o5 = axes_overlap(f2, W("ab"), W("ab^2"));
  CHECK(o5.kind == OverlapKind::Crossing);
  CHECK(o5.diameter == 3);
}

TEST_CASE("parallel overlap matches commuting on the free tree") {
  auto& f2 = F2();
  CHECK(axes_overlap(f2, W("ab"), W("ababab")).kind == OverlapKind::Parallel);
  CHECK(axes_overlap(f2, W("a"), W("bab")).kind != OverlapKind::Parallel);
}

TEST_CASE("germs compare by doubled Gromov products") {
  auto& f2 = F2();
  SpacePoint e = f2.base();
  Germ g1 = germ_for(f2, W("a^15"), e, 1);
  Germ g2 = germ_for(f2, W("a^20"), e, 1);
  Germ g3 = germ_for(f2, W("A^15"), e, 1);
  Germ g4 = germ_for(f2, W("b^12"), e, 1);
  CHECK(germ_equivalent(f2, g1, g2));
  CHECK(!germ_equivalent(f2, g1, g3));
  CHECK(germ_opposite(f2, g1, g3));
  CHECK(germ_opposite(f2, g1, g4));
  CHECK(!germ_opposite(f2, g1, g2));

  Germ short_germ = germ_for(f2, W("a^3"), e, 1);
  CHECK(short_germ.empty);
  CHECK_THROWS_AS(germ_equivalent(f2, g1, short_germ), std::invalid_argument);
  CHECK_THROWS_AS(germ_of(f2, e, SpacePoint{0, W("a^15")}, 0), std::invalid_argument);
}

TEST_CASE("wpd counts on the a-axis") {
  auto& f2 = F2();
  CHECK(estimate_uniform_wpd_D(f2, W("a"), 2, 6) == 5);
  CHECK(estimate_uniform_wpd_D(f2, W("a"), 0, 4) == 1);
  CHECK_THROWS_AS(estimate_uniform_wpd_D(f2, W("1"), 0, 2), std::invalid_argument);
}

TEST_CASE("segment meets report overlap diameter or gap") {
  auto& f2 = F2();
  auto sm1 = segment_meet(f2, P("1"), P("a^4"), P("a^2b^2"), P("a^2B"));
  CHECK(sm1.intersects);
  CHECK(sm1.diameter == 0);
  auto sm2 = segment_meet(f2, P("1"), P("a^2"), P("a^3b"), P("a^3b^3"));
  CHECK(!sm2.intersects);
  CHECK(sm2.gap == 2);
  auto sm3 = segment_meet(f2, P("1"), P("a^4"), P("a"), P("a^3"));
  CHECK(sm3.intersects);
  CHECK(sm3.diameter == 2);
  auto sm4 = segment_meet(f2, P("B"), P("a^2"), P("a"), P("a^5b"));
  CHECK(sm4.intersects);
  CHECK(sm4.diameter == 1);
}

TEST_CASE("broken geodesics measure against the straight segment") {
  auto& f2 = F2();
  CHECK(hausdorff_broken_vs_segment(f2, {P("1"), P("a^2b^2"), P("a^4")}) == 2);
  CHECK(hausdorff_broken_vs_segment(f2, {P("1"), P("a"), P("a^2")}) == 0);
  CHECK(hausdorff_broken_vs_segment(f2, {P("1"), P("a^2"), P("1")}) == 2);
}

TEST_CASE("star tree and coset tree displacements") {
  FreeProductModel fp230({2, 3, 0});
  CHECK(min_displacement_element(fp230, fp230.parse("s")).L == 0);
  BaumslagSolitarFreeProductModel bs(2, 3, 1);
  CHECK(joint_displacement(bs, {bs.parse("a"), bs.parse("t"), bs.parse("z")}).value == 2);
  CHECK(translation_length(bs, bs.parse("z")) == 0);
  CHECK(translation_length(bs, bs.parse("za")) == 2);
}

TEST_CASE("action constants derive the pinned quantities") {
  ActionConstants c{0, 1, 2};
  c.validate();
  CHECK(c.T() == 0);
  CHECK(c.k() == 60);
  CHECK(c.m() == 844);
  CHECK(c.b() == 687302);
  CHECK(c.p() == 33762);
  CHECK(c.A() == doctest::Approx(1.0 / 33762.0).epsilon(1e-15));
  ActionConstants bad{0, 0, 1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
