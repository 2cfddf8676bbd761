#include "growth/word.hpp"

#include <algorithm>
#include <cstring>

namespace growth {

Word inverse_spelling(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inv(*it));
  return out;
}

// Letter order: a < a^-1 < b < b^-1 < ...
static int letter_rank(Letter l) { return 2 * gen_of(l) + (positive(l) ? 0 : 1); }

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::size_t common_prefix(const Word& a, const Word& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

std::string encode(const Word& w) {
  std::string s;
  s.resize(w.size() * sizeof(Letter));
  if (!w.empty()) std::memcpy(s.data(), w.data(), s.size());
  return s;
}

std::size_t WordHash::operator()(const Word& w) const {
  // FNV-1a over the letter bytes.
  std::uint64_t h = 1469598103934665603ull;
  for (Letter l : w) {
    h ^= static_cast<std::uint16_t>(l);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Hash128 hash128(const Word& w) {
  // Two independent multiplicative streams; equality buckets are verified
  // against the exact words, so this only needs to be collision-sparse.
  std::uint64_t h1 = 0x9e3779b97f4a7c15ull;
  std::uint64_t h2 = 0xc2b2ae3d27d4eb4full;
  for (Letter l : w) {
    std::uint64_t v = static_cast<std::uint16_t>(l) + 2;
    h1 = (h1 ^ v) * 0x100000001b3ull;
    h1 ^= h1 >> 29;
    h2 = (h2 + v) * 0xff51afd7ed558ccdull;
    h2 ^= h2 >> 33;
  }
  h1 ^= static_cast<std::uint64_t>(w.size()) * 0x9e3779b97f4a7c15ull;
  return Hash128{h1, h2};
}

}  // namespace growth
