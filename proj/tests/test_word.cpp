#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unordered_set>

#include "growth/word.hpp"

using namespace growth;

TEST_CASE("letters pack a generator index and a sign") {
  Letter a = make_letter(0, true);
  Letter A = make_letter(0, false);
  Letter b = make_letter(1, true);
  CHECK(gen_of(a) == 0);
  CHECK(gen_of(A) == 0);
  CHECK(gen_of(b) == 1);
  CHECK(positive(a));
  CHECK(!positive(A));
  CHECK(inv(a) == A);
  CHECK(inv(A) == a);
}

TEST_CASE("inverse spelling reverses and flips") {
  Word w = {make_letter(0, true), make_letter(1, true), make_letter(0, false)};
  Word iw = inverse_spelling(w);
  REQUIRE(iw.size() == 3);
  CHECK(iw[0] == make_letter(0, true));
  CHECK(iw[1] == make_letter(1, false));
  CHECK(iw[2] == make_letter(0, false));
  CHECK(inverse_spelling(iw) == w);
  CHECK(inverse_spelling(Word{}) == Word{});
}

TEST_CASE("shortlex orders by length, then generator, then sign") {
  Letter a = make_letter(0, true), A = make_letter(0, false);
  Letter b = make_letter(1, true);
  CHECK(shortlex_less(Word{a}, Word{a, a}));
  CHECK(shortlex_less(Word{a}, Word{A}));
  CHECK(shortlex_less(Word{A}, Word{b}));
  CHECK(shortlex_less(Word{a, b}, Word{A, a}));
  CHECK(!shortlex_less(Word{a}, Word{a}));
  CHECK(shortlex_less(Word{}, Word{a}));
}

TEST_CASE("common prefix length") {
  Letter a = make_letter(0, true), b = make_letter(1, true);
  CHECK(common_prefix(Word{a, b, a}, Word{a, b, b}) == 2);
  CHECK(common_prefix(Word{a}, Word{b}) == 0);
  CHECK(common_prefix(Word{a, b}, Word{a, b}) == 2);
  CHECK(common_prefix(Word{}, Word{a}) == 0);
}

TEST_CASE("encodings and hashes separate distinct words") {
  Letter a = make_letter(0, true), A = make_letter(0, false);
  Letter b = make_letter(1, true);
  std::vector<Word> words = {{}, {a}, {A}, {b}, {a, a}, {a, b}, {b, a}, {a, A}};
  std::unordered_set<std::string> encodings;
  std::unordered_set<std::size_t> hashes;
  for (const auto& w : words) {
    encodings.insert(encode(w));
    hashes.insert(WordHash{}(w));
    CHECK(hash128(w) == hash128(w));
  }
  CHECK(encodings.size() == words.size());
  CHECK(hashes.size() == words.size());
  CHECK(!(hash128(Word{a}) == hash128(Word{A})));
  bool forward = hash128(Word{a}) < hash128(Word{A});
  bool backward = hash128(Word{A}) < hash128(Word{a});
  CHECK(forward != backward);
}
