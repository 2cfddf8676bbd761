#include "doctest.h"

#include <stdexcept>

#include "growth/group.hpp"

using namespace growth;

TEST_CASE("free group normal forms and formatting") {
  FreeGroupModel f2(2);
  CHECK(f2.format(f2.parse("a b A B")) == "abAB");
  CHECK(f2.parse("a A") == Word{});
  CHECK(f2.format(f2.parse("aaa")) == "a^3");
  CHECK(f2.parse("a^3") == f2.parse("aaa"));
  CHECK(f2.parse("a^-2") == f2.parse("AA"));
  CHECK(f2.parse("1") == Word{});
  CHECK(f2.multiply(f2.parse("ab"), f2.parse("B")) == f2.parse("a"));
  CHECK(f2.invert(f2.parse("ab")) == f2.parse("BA"));
  CHECK(f2.power(f2.parse("ab"), 3) == f2.parse("ababab"));
  CHECK(f2.is_identity(f2.multiply(f2.parse("ab"), f2.parse("BA"))));
  CHECK(f2.commute(f2.parse("a"), f2.parse("a^3")));
  CHECK(!f2.commute(f2.parse("a"), f2.parse("b")));
}

TEST_CASE("free group tree distances and segment points") {
  FreeGroupModel f2(2);
  CHECK(f2.dist(SpacePoint{0, f2.parse("ab")}, SpacePoint{0, f2.parse("aB")}) == 2);
  auto mid = f2.point_on_segment(SpacePoint{0, f2.parse("ab")},
                                 SpacePoint{0, f2.parse("aB")}, 1);
  CHECK(mid.at == f2.parse("a"));
  CHECK_THROWS_AS(f2.point_on_segment(SpacePoint{0, f2.parse("ab")},
                                      SpacePoint{0, f2.parse("aB")}, 3),
                  std::invalid_argument);
}

TEST_CASE("order-2 and order-3 free product syllables") {
  FreeProductModel fp23({2, 3});
  CHECK(fp23.format(fp23.parse("s^2")) == "1");
  CHECK(fp23.format(fp23.parse("t^2")) == "T");
  CHECK(fp23.format(fp23.parse("t^3")) == "1");
  CHECK(fp23.format(fp23.parse("t^4")) == "t");
  CHECK(fp23.format(fp23.parse("s t T s")) == "1");
  CHECK(fp23.format(fp23.parse("stst")) == "stst");

  SpacePoint v0{0, {}};
  CHECK(fp23.dist(v0, fp23.act(fp23.parse("st"), v0)) == 2);
  CHECK(fp23.dist(v0, fp23.act(fp23.parse("s"), v0)) == 0);
  CHECK(fp23.dist(v0, fp23.act(fp23.parse("t"), v0)) == 2);
  CHECK(fp23.dist(v0, SpacePoint{1, {}}) == 1);
  CHECK(fp23.dist(v0, fp23.act(fp23.parse("ts"), v0)) == 2);
  CHECK(fp23.dist(v0, fp23.act(fp23.parse("tst"), v0)) == 4);
  auto m1 = fp23.point_on_segment(v0, fp23.act(fp23.parse("st"), v0), 1);
  CHECK(m1.site == 1);
  CHECK(m1.at == fp23.parse("s"));
}

TEST_CASE("star tree with an infinite factor") {
  FreeProductModel fp230({2, 3, 0});
  SpacePoint e{-1, {}};
  CHECK(fp230.dist(e, fp230.act(fp230.parse("u"), e)) == 2);
  CHECK(fp230.dist(e, fp230.act(fp230.parse("su"), e)) == 4);
  CHECK(fp230.dist(e, SpacePoint{2, {}}) == 1);
  auto w1 = fp230.point_on_segment(e, fp230.act(fp230.parse("su"), e), 2);
  CHECK(w1.site == -1);
  CHECK(w1.at == fp230.parse("s"));
}

TEST_CASE("Britton rewriting in the Baumslag-Solitar free product") {
  BaumslagSolitarFreeProductModel bs(2, 3, 1);
  CHECK(bs.format(bs.parse("t a^2 T")) == "a^3");
  CHECK(bs.format(bs.parse("t^2 a^4 T^2")) == "a^9");
  CHECK(bs.format(bs.parse("t a T")) == "taT");
  CHECK(bs.format(bs.parse("T a^3 t")) == "a^2");
  CHECK(bs.format(bs.parse("T a t")) == "Tat");
  CHECK(bs.format(bs.parse("a t")) == "at");
  CHECK(bs.format(bs.parse("t a^2")) == "a^3t");
  CHECK(bs.format(bs.parse("t a^5")) == "a^6ta");
  CHECK(bs.format(bs.parse("T a^7")) == "a^4Ta");
  CHECK(bs.format(bs.parse("z t T Z")) == "1");
  CHECK(bs.format(bs.parse("t z Z t a^2 T T")) == "a^3taT");
}

TEST_CASE("surjective endomorphism with a nontrivial kernel element") {
  BaumslagSolitarFreeProductModel bs(2, 3, 1);
  Word g = bs.parse("t a T"), h = bs.parse("a");
  Word c = bs.multiply(bs.multiply(g, h), bs.multiply(bs.invert(g), bs.invert(h)));
  REQUIRE(!bs.is_identity(c));
  CHECK(bs.format(c) == "A^6taTataTa^2");
  Homomorphism phi{&bs, &bs, {bs.parse("a^2"), bs.parse("t"), bs.parse("z")}};
  CHECK(bs.is_identity(phi.evaluate(c)));
}

TEST_CASE("Baumslag-Solitar coset tree distances") {
  BaumslagSolitarFreeProductModel bs(2, 3, 1);
  SpacePoint b0{0, {}};
  CHECK(bs.dist(b0, bs.act(bs.parse("z"), b0)) == 2);
  CHECK(bs.dist(b0, bs.act(bs.parse("za"), b0)) == 2);
  CHECK(bs.dist(b0, bs.act(bs.parse("zaz"), b0)) == 4);
  CHECK(bs.dist(b0, bs.act(bs.parse("a"), b0)) == 0);
  CHECK(bs.dist(b0, SpacePoint{1, {}}) == 1);
  auto mm = bs.point_on_segment(b0, bs.act(bs.parse("zaz"), b0), 2);
  CHECK(mm.site == 0);
  CHECK(mm.at == bs.parse("z"));
}

TEST_CASE("power sets count symmetrized balls") {
  FreeGroupModel f2(2);
  auto ball2 = power_set(f2, {f2.parse("a"), f2.parse("b")}, 2);
  CHECK(ball2.size() == 17);
  FreeProductModel fp23({2, 3});
  auto fb = power_set(fp23, {fp23.parse("s"), fp23.parse("t")}, 2);
  CHECK(fb.size() == 8);
  CHECK(power_set(f2, {f2.parse("a")}, 0).size() == 1);
  CHECK_THROWS_AS(power_set(f2, {f2.parse("a"), f2.parse("b")}, 12, 1000),
                  std::length_error);
}

TEST_CASE("canonical sets drop the identity and sort shortlex") {
  FreeGroupModel f2(2);
  auto set = canonical_set(f2, {f2.parse("b"), f2.parse("1"), f2.parse("a"),
                                f2.parse("b")});
  REQUIRE(set.size() == 2);
  CHECK(f2.format(set[0]) == "a");
  CHECK(f2.format(set[1]) == "b");
}

TEST_CASE("word homomorphisms evaluate letterwise") {
  FreeGroupModel f2(2);
  Homomorphism hm{&f2, &f2, {f2.parse("ab"), f2.parse("b")}};
  CHECK(f2.format(hm.evaluate(f2.parse("aB"))) == "a");
  CHECK(hm.evaluate(Word{}) == Word{});
}

TEST_CASE("model factory accepts the documented names only") {
  CHECK(make_model("f2")->kind() == "free_group");
  CHECK(make_model("fp23")->kind() == "free_product");
  CHECK(make_model("bs23z")->kind() == "bs_free_product");
  CHECK(make_model("f1")->alphabet() == 1);
  CHECK(make_model("fp234")->alphabet() == 3);
  CHECK_THROWS_AS(make_model("nope"), std::invalid_argument);
  CHECK_THROWS_AS(make_model("fp9"), std::invalid_argument);
}

TEST_CASE("malformed words raise parse errors") {
  FreeGroupModel f2(2);
  CHECK_THROWS_AS(f2.parse("a$"), std::invalid_argument);
  CHECK_THROWS_AS(f2.parse("c"), std::invalid_argument);
  CHECK_THROWS_AS(f2.parse("a^"), std::invalid_argument);
}
