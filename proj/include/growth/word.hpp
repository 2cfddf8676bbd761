#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace growth {

// A letter is a signed generator index: +(i+1) for generator i, -(i+1) for its
// inverse. Words store canonical spellings only; each model owns the
// normalization that produces them.
using Letter = std::int16_t;
using Word = std::vector<Letter>;

inline int gen_of(Letter l) { return std::abs(l) - 1; }
inline bool positive(Letter l) { return l > 0; }
inline Letter inv(Letter l) { return static_cast<Letter>(-l); }
inline Letter make_letter(int gen, bool pos) {
  return static_cast<Letter>(pos ? gen + 1 : -(gen + 1));
}

Word inverse_spelling(const Word& w);

// Shortlex over (length, generator index, sign) with + < - at equal index.
bool shortlex_less(const Word& a, const Word& b);

// Longest common prefix length, used for distance arithmetic on tree models.
std::size_t common_prefix(const Word& a, const Word& b);

// Compact byte encoding for hashing and set membership.
std::string encode(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

// 128-bit content hash for large-scale equality bucketing.
struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  bool operator==(const Hash128&) const = default;
  bool operator<(const Hash128& o) const {
    return hi != o.hi ? hi < o.hi : lo < o.lo;
  }
};

Hash128 hash128(const Word& w);

}  // namespace growth
