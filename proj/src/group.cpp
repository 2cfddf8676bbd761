#include "growth/group.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace growth {

std::string encode(const SpacePoint& p) {
  std::string s;
  s.push_back(static_cast<char>(p.site + 2));
  s += encode(p.at);
  return s;
}

int GroupModel::gen_from_char(char c) const {
  char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (int g = 0; g < alphabet(); ++g)
    if (letter_char(g) == lc) return g;
  throw std::invalid_argument(std::string("unknown generator letter '") + c + "'");
}

Word GroupModel::multiply(const Word& a, const Word& b) const {
  Word raw;
  raw.reserve(a.size() + b.size());
  raw.insert(raw.end(), a.begin(), a.end());
  raw.insert(raw.end(), b.begin(), b.end());
  return normalize(raw);
}

Word GroupModel::invert(const Word& a) const { return normalize(inverse_spelling(a)); }

Word GroupModel::power(const Word& a, std::int64_t e) const {
  Word base = e < 0 ? invert(a) : a;
  std::int64_t n = e < 0 ? -e : e;
  Word out;
  for (std::int64_t i = 0; i < n; ++i) out = multiply(out, base);
  return out;
}

bool GroupModel::commute(const Word& a, const Word& b) const {
  return multiply(a, b) == multiply(b, a);
}

std::string GroupModel::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    char c = letter_char(gen_of(w[i]));
    if (!positive(w[i])) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out.push_back(c);
    if (j - i > 1) {
      out.push_back('^');
      out += std::to_string(j - i);
    }
    i = j;
  }
  return out;
}

Word GroupModel::parse(const std::string& text) const {
  Word raw;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '1' && i + 1 == text.size()) return {};
  while (i < text.size()) {
    char c = text[i];
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad word syntax: '" + text + "'");
    bool pos = std::islower(static_cast<unsigned char>(c));
    int g = gen_from_char(c);
    ++i;
    std::int64_t e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("bad exponent in word: '" + text + "'");
      e = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        e = e * 10 + (text[i++] - '0');
      if (neg) e = -e;
    }
    if (e < 0) {
      pos = !pos;
      e = -e;
    }
    for (std::int64_t k = 0; k < e; ++k) raw.push_back(make_letter(g, pos));
    skip_ws();
  }
  return normalize(raw);
}

std::string GroupModel::label(const SpacePoint& p) const {
  if (p.site < 0 || kind() == "free_group") return format(p.at);
  return format(p.at) + "*F" + std::to_string(p.site);
}

// ---------------------------------------------------------------------------
// FreeGroupModel

FreeGroupModel::FreeGroupModel(int rank) : rank_(rank) {
  if (rank < 1 || rank > 26) throw std::invalid_argument("free group rank out of range");
}

std::map<std::string, std::int64_t> FreeGroupModel::params() const {
  return {{"rank", rank_}};
}

char FreeGroupModel::letter_char(int gen) const {
  return static_cast<char>('a' + gen);
}

Word FreeGroupModel::normalize(const Word& raw) const {
  Word out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (gen_of(l) >= rank_) throw std::invalid_argument("letter outside alphabet");
    if (!out.empty() && out.back() == inv(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word FreeGroupModel::multiply(const Word& a, const Word& b) const {
  Word out = a;
  out.reserve(a.size() + b.size());
  for (Letter l : b) {
    if (!out.empty() && out.back() == inv(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

SpacePoint FreeGroupModel::act(const Word& g, const SpacePoint& p) const {
  return SpacePoint{0, multiply(g, p.at)};
}

std::int64_t FreeGroupModel::dist(const SpacePoint& x, const SpacePoint& y) const {
  // d(u, v) = |u| + |v| - 2 lcp(u, v) on the Cayley tree.
  std::size_t l = common_prefix(x.at, y.at);
  return static_cast<std::int64_t>(x.at.size() + y.at.size() - 2 * l);
}

SpacePoint FreeGroupModel::point_on_segment(const SpacePoint& x, const SpacePoint& y,
                                            std::int64_t t) const {
  std::int64_t d = dist(x, y);
  if (t < 0 || t > d) throw std::invalid_argument("segment parameter out of range");
  std::size_t l = common_prefix(x.at, y.at);
  std::int64_t down = static_cast<std::int64_t>(x.at.size() - l);
  Word v;
  if (t <= down) {
    v.assign(x.at.begin(), x.at.end() - t);
  } else {
    v.assign(y.at.begin(), y.at.begin() + (l + (t - down)));
  }
  return SpacePoint{0, std::move(v)};
}

// ---------------------------------------------------------------------------
// Shared two-factor coset-tree geometry.
//
// Vertices are cosets g G_0 and g G_1, edges {g G_0, g G_1}. For reduced
// w = x^-1 y with r alternating syllables, d(x G_i, y G_j) =
// r + 1 - [first syllable in G_i] - [last syllable in G_j], and 0 / 1 for
// empty w depending on whether the sites agree.

namespace {

struct Syllables {
  // Offsets of syllable boundaries in the word plus per-syllable factor class.
  std::vector<std::size_t> bounds;  // size r+1
  std::vector<int> cls;             // size r
  std::size_t count() const { return cls.size(); }
};

Syllables split_syllables(const Word& w, const std::function<int(Letter)>& factor_of) {
  Syllables s;
  s.bounds.push_back(0);
  std::size_t i = 0;
  while (i < w.size()) {
    int c = factor_of(w[i]);
    std::size_t j = i;
    while (j < w.size() && factor_of(w[j]) == c) ++j;
    s.cls.push_back(c);
    s.bounds.push_back(j);
    i = j;
  }
  return s;
}

std::int64_t two_factor_dist(const Word& w, int i, int j,
                             const std::function<int(Letter)>& factor_of) {
  if (w.empty()) return i == j ? 0 : 1;
  Syllables s = split_syllables(w, factor_of);
  std::int64_t r = static_cast<std::int64_t>(s.count());
  return r + 1 - (s.cls.front() == i ? 1 : 0) - (s.cls.back() == j ? 1 : 0);
}

// Vertex at distance t along the geodesic between two coset vertices.
SpacePoint two_factor_point_on_segment(
    const GroupModel& m, const SpacePoint& x, const SpacePoint& y, std::int64_t t,
    const std::function<int(Letter)>& factor_of,
    const std::function<Word(const Word&, int)>& coset_rep) {
  Word w = m.multiply(m.invert(x.at), y.at);
  std::int64_t d = two_factor_dist(w, x.site, y.site, factor_of);
  if (t < 0 || t > d) throw std::invalid_argument("segment parameter out of range");
  if (t == 0) return x;
  if (t == d) return y;
  Syllables s = split_syllables(w, factor_of);
  std::size_t first = 0, last = s.count();
  Word prefix = x.at;
  if (first < last && s.cls[first] == x.site) {
    Word syl(w.begin() + s.bounds[first], w.begin() + s.bounds[first + 1]);
    prefix = m.multiply(prefix, syl);
    ++first;
  }
  if (first < last && s.cls[last - 1] == y.site) --last;
  // Path vertices: v_0 = x, and for k = 1..s the coset of the k-th remaining
  // syllable at the prefix so far, ending at y.
  std::int64_t step = 0;
  for (std::size_t k = first; k < last; ++k) {
    ++step;
    if (step == t) return SpacePoint{s.cls[k], coset_rep(prefix, s.cls[k])};
    Word syl(w.begin() + s.bounds[k], w.begin() + s.bounds[k + 1]);
    prefix = m.multiply(prefix, syl);
  }
  // t == step + 1 == d lands on y, already handled; only the s = 0 (i != j)
  // hop and interior steps reach here.
  return SpacePoint{y.site, coset_rep(prefix, y.site)};
}

}  // namespace

// ---------------------------------------------------------------------------
// FreeProductModel

FreeProductModel::FreeProductModel(std::vector<int> orders) : orders_(std::move(orders)) {
  if (orders_.size() < 2 || orders_.size() > 8)
    throw std::invalid_argument("free product needs 2..8 factors");
  for (int m : orders_)
    if (m < 0 || m == 1) throw std::invalid_argument("factor order must be 0 or >= 2");
}

std::map<std::string, std::int64_t> FreeProductModel::params() const {
  std::map<std::string, std::int64_t> p;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    p["order_" + std::string(1, letter_char(static_cast<int>(i)))] = orders_[i];
  return p;
}

char FreeProductModel::letter_char(int gen) const {
  static const char names[] = {'s', 't', 'u', 'v', 'w', 'x', 'y', 'z'};
  return names[gen];
}

Word FreeProductModel::normalize(const Word& raw) const {
  std::vector<std::pair<int, std::int64_t>> stack;  // (gen, running exponent)
  for (Letter l : raw) {
    int g = gen_of(l);
    if (g >= alphabet()) throw std::invalid_argument("letter outside alphabet");
    std::int64_t e = positive(l) ? 1 : -1;
    if (!stack.empty() && stack.back().first == g) {
      stack.back().second += e;
      int m = orders_[g];
      std::int64_t v = stack.back().second;
      if (m > 0) v = ((v % m) + m) % m;
      if (v == 0) stack.pop_back();
    } else {
      stack.emplace_back(g, e);
    }
  }
  Word out;
  for (auto& [g, e] : stack) {
    int m = orders_[g];
    if (m == 0) {
      bool pos = e > 0;
      for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) out.push_back(make_letter(g, pos));
    } else {
      std::int64_t r = ((e % m) + m) % m;
      if (2 * r <= m)
        for (std::int64_t k = 0; k < r; ++k) out.push_back(make_letter(g, true));
      else
        for (std::int64_t k = 0; k < m - r; ++k) out.push_back(make_letter(g, false));
    }
  }
  return out;
}

Word FreeProductModel::coset_rep(const Word& w, int site) const {
  if (w.empty()) return w;
  std::size_t end = w.size();
  if (gen_of(w[end - 1]) == site) {
    while (end > 0 && gen_of(w[end - 1]) == site) --end;
  }
  return Word(w.begin(), w.begin() + end);
}

SpacePoint FreeProductModel::act(const Word& g, const SpacePoint& p) const {
  Word moved = multiply(g, p.at);
  if (p.site < 0) return SpacePoint{-1, std::move(moved)};
  return SpacePoint{p.site, coset_rep(moved, p.site)};
}

std::int64_t FreeProductModel::dist(const SpacePoint& x, const SpacePoint& y) const {
  Word w = multiply(invert(x.at), y.at);
  auto fac = [this](Letter l) { return factor_of(l); };
  if (orders_.size() == 2 && x.site >= 0 && y.site >= 0)
    return two_factor_dist(w, x.site, y.site, fac);
  // Star tree: element vertices sit between the coset vertices they belong to.
  Syllables s = split_syllables(w, fac);
  std::int64_t r = static_cast<std::int64_t>(s.count());
  if (x.site < 0 && y.site < 0) return 2 * r;
  if (x.site < 0) {
    if (w.empty()) return 1;
    return 2 * r + 1 - 2 * (s.cls.back() == y.site ? 1 : 0);
  }
  if (y.site < 0) {
    if (w.empty()) return 1;
    return 2 * r + 1 - 2 * (s.cls.front() == x.site ? 1 : 0);
  }
  if (w.empty()) return x.site == y.site ? 0 : 2;
  return 2 * (r + 1 - (s.cls.front() == x.site ? 1 : 0) - (s.cls.back() == y.site ? 1 : 0));
}

SpacePoint FreeProductModel::point_on_segment(const SpacePoint& x, const SpacePoint& y,
                                              std::int64_t t) const {
  auto fac = [this](Letter l) { return factor_of(l); };
  auto rep = [this](const Word& w, int site) { return coset_rep(w, site); };
  if (orders_.size() == 2 && x.site >= 0 && y.site >= 0)
    return two_factor_point_on_segment(*this, x, y, t, fac, rep);
  // Star tree: walk vertex by vertex. Distances are small wherever this is
  // used (displacement witnesses and descent steps), so a linear walk is fine.
  std::int64_t d = dist(x, y);
  if (t < 0 || t > d) throw std::invalid_argument("segment parameter out of range");
  if (t == 0) return x;
  SpacePoint cur = x;
  for (std::int64_t step = 0; step < t; ++step) {
    // Move to the unique neighbor of cur strictly closer to y.
    std::vector<SpacePoint> cand;
    if (cur.site < 0) {
      for (int i = 0; i < alphabet(); ++i)
        cand.push_back(SpacePoint{i, coset_rep(cur.at, i)});
    } else {
      Word w = multiply(invert(cur.at), y.at);
      Syllables s = split_syllables(w, fac);
      Word next = cur.at;
      if (!s.cls.empty() && s.cls.front() == cur.site) {
        Word syl(w.begin(), w.begin() + s.bounds[1]);
        next = multiply(next, syl);
      }
      cand.push_back(SpacePoint{-1, next});
    }
    bool moved = false;
    for (auto& n : cand) {
      if (dist(n, y) == d - step - 1 && dist(n, cur) == 1) {
        cur = n;
        moved = true;
        break;
      }
    }
    if (!moved) throw std::logic_error("path walk failed on star tree");
  }
  return cur;
}

// ---------------------------------------------------------------------------
// BaumslagSolitarFreeProductModel

BaumslagSolitarFreeProductModel::BaumslagSolitarFreeProductModel(int p, int q, int extra)
    : p_(p), q_(q), extra_(extra) {
  if (p < 1 || q < 1) throw std::invalid_argument("BS parameters must be positive");
  if (extra < 1 || extra > 6) throw std::invalid_argument("extra free rank out of range");
}

std::map<std::string, std::int64_t> BaumslagSolitarFreeProductModel::params() const {
  return {{"p", p_}, {"q", q_}, {"extra_rank", extra_}};
}

char BaumslagSolitarFreeProductModel::letter_char(int gen) const {
  if (gen == 0) return 'a';
  if (gen == 1) return 't';
  static const char names[] = {'z', 'y', 'x', 'w', 'v', 'u'};
  return names[gen - 2];
}

// Canonical form in BS(p,q) = <a,t | t a^p t^-1 = a^q>: a^{e0} t^{s1} a^{e1}
// ... t^{sn} a^{en} with e_i in [0,p) after t, e_i in [0,q) after t^-1, and no
// pinches t a^0 t^-1 or t^-1 a^0 t. Exponents are pushed left using
// t a^{pk} = a^{qk} t and t^-1 a^{qk} = a^{pk} t^-1.
Word BaumslagSolitarFreeProductModel::bs_canonical(const Word& part) const {
  std::int64_t e0 = 0;
  std::vector<std::pair<int, std::int64_t>> slots;  // (sign of t, following a-exponent)
  for (Letter l : part) {
    if (gen_of(l) == 0) {
      std::int64_t d = positive(l) ? 1 : -1;
      if (slots.empty())
        e0 += d;
      else
        slots.back().second += d;
    } else {
      slots.emplace_back(positive(l) ? 1 : -1, 0);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = slots.size(); k-- > 0;) {
      std::int64_t m = slots[k].first > 0 ? p_ : q_;
      std::int64_t other = slots[k].first > 0 ? q_ : p_;
      std::int64_t r = ((slots[k].second % m) + m) % m;
      std::int64_t carry = (slots[k].second - r) / m * other;
      slots[k].second = r;
      if (k == 0)
        e0 += carry;
      else
        slots[k - 1].second += carry;
    }
    for (std::size_t k = 0; k + 1 < slots.size(); ++k) {
      if (slots[k].second == 0 && slots[k].first == -slots[k + 1].first) {
        std::int64_t tail = slots[k + 1].second;
        if (k == 0)
          e0 += tail;
        else
          slots[k - 1].second += tail;
        slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(k),
                    slots.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        changed = true;
        break;
      }
    }
  }
  Word out;
  auto push_a = [&out](std::int64_t e) {
    bool pos = e > 0;
    for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) out.push_back(make_letter(0, pos));
  };
  push_a(e0);
  for (auto& [sg, e] : slots) {
    out.push_back(make_letter(1, sg > 0));
    push_a(e);
  }
  return out;
}

Word BaumslagSolitarFreeProductModel::normalize(const Word& raw) const {
  // Alternating product of BS-factor parts and free-factor parts.
  std::vector<std::pair<int, Word>> parts;  // (class, canonical factor word)
  auto reduce_free = [](Word w) {
    Word out;
    for (Letter l : w) {
      if (!out.empty() && out.back() == inv(l))
        out.pop_back();
      else
        out.push_back(l);
    }
    return out;
  };
  auto push_part = [&](int cls, const Word& body) {
    Word merged = body;
    if (!parts.empty() && parts.back().first == cls) {
      merged = parts.back().second;
      merged.insert(merged.end(), body.begin(), body.end());
      parts.pop_back();
    }
    Word canon = cls == 0 ? bs_canonical(merged) : reduce_free(merged);
    if (!canon.empty()) parts.emplace_back(cls, std::move(canon));
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    if (gen_of(raw[i]) >= alphabet()) throw std::invalid_argument("letter outside alphabet");
    int cls = factor_of(raw[i]);
    std::size_t j = i;
    while (j < raw.size() && factor_of(raw[j]) == cls) ++j;
    Word body(raw.begin() + static_cast<std::ptrdiff_t>(i),
              raw.begin() + static_cast<std::ptrdiff_t>(j));
    // Parts on the stack alternate classes, so one merge per run suffices: a
    // collapsed part exposes the other class, which the next run merges with.
    push_part(cls, body);
    i = j;
  }
  Word out;
  for (auto& [cls, body] : parts) out.insert(out.end(), body.begin(), body.end());
  return out;
}

Word BaumslagSolitarFreeProductModel::coset_rep(const Word& w, int site) const {
  if (w.empty()) return w;
  std::size_t end = w.size();
  if (factor_of(w[end - 1]) == site) {
    while (end > 0 && factor_of(w[end - 1]) == site) --end;
  }
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(end));
}

SpacePoint BaumslagSolitarFreeProductModel::act(const Word& g, const SpacePoint& p) const {
  Word moved = multiply(g, p.at);
  return SpacePoint{p.site, coset_rep(moved, p.site)};
}

std::int64_t BaumslagSolitarFreeProductModel::dist(const SpacePoint& x,
                                                   const SpacePoint& y) const {
  Word w = multiply(invert(x.at), y.at);
  auto fac = [this](Letter l) { return factor_of(l); };
  return two_factor_dist(w, x.site, y.site, fac);
}

SpacePoint BaumslagSolitarFreeProductModel::point_on_segment(const SpacePoint& x,
                                                             const SpacePoint& y,
                                                             std::int64_t t) const {
  auto fac = [this](Letter l) { return factor_of(l); };
  auto rep = [this](const Word& w, int site) { return coset_rep(w, site); };
  return two_factor_point_on_segment(*this, x, y, t, fac, rep);
}

// ---------------------------------------------------------------------------

std::unique_ptr<GroupModel> make_model(const std::string& name) {
  if (name == "f2") return std::make_unique<FreeGroupModel>(2);
  if (name == "f3") return std::make_unique<FreeGroupModel>(3);
  if (name.rfind("f", 0) == 0 && name.size() > 1 &&
      std::isdigit(static_cast<unsigned char>(name[1])))
    return std::make_unique<FreeGroupModel>(std::stoi(name.substr(1)));
  if (name.rfind("fp", 0) == 0 && name.size() > 2) {
    std::vector<int> orders;
    for (std::size_t i = 2; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        throw std::invalid_argument("bad free product model name: " + name);
      orders.push_back(name[i] - '0');
    }
    return std::make_unique<FreeProductModel>(orders);
  }
  if (name.rfind("bs", 0) == 0 && name.size() >= 4) {
    int p = name[2] - '0';
    int q = name[3] - '0';
    int extra = 1;
    if (name.size() > 4 && name[4] == 'z' && name.size() == 5) extra = 1;
    return std::make_unique<BaumslagSolitarFreeProductModel>(p, q, extra);
  }
  throw std::invalid_argument("unknown model name: " + name);
}

std::vector<Word> canonical_set(const GroupModel& m, std::vector<Word> words) {
  std::vector<Word> out;
  for (auto& w : words) {
    Word c = m.normalize(w);
    if (!c.empty()) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Word> parse_set(const GroupModel& m, const std::vector<std::string>& words) {
  std::vector<Word> out;
  for (const auto& s : words) out.push_back(m.parse(s));
  return canonical_set(m, std::move(out));
}

std::vector<Word> symmetrize(const GroupModel& m, const std::vector<Word>& set) {
  std::vector<Word> out = set;
  for (const auto& w : set) out.push_back(m.invert(w));
  return canonical_set(m, std::move(out));
}

std::vector<Word> power_set(const GroupModel& m, const std::vector<Word>& set, int p,
                            std::size_t cap) {
  std::vector<Word> sym = symmetrize(m, set);
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> frontier{Word{}};
  seen.insert(Word{});
  for (int step = 0; step < p; ++step) {
    std::vector<Word> next;
    for (const auto& v : frontier) {
      for (const auto& s : sym) {
        Word w = m.multiply(v, s);
        if (seen.insert(w).second) {
          if (seen.size() > cap) throw std::length_error("power_set element cap exceeded");
          next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  std::vector<Word> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

Word Homomorphism::evaluate(const Word& w) const {
  if (!source || !target) throw std::invalid_argument("homomorphism endpoints unset");
  if (static_cast<int>(images.size()) != source->alphabet())
    throw std::invalid_argument("homomorphism image count mismatch");
  Word out;
  for (Letter l : w) {
    const Word& im = images[static_cast<std::size_t>(gen_of(l))];
    out = target->multiply(out, positive(l) ? im : target->invert(im));
  }
  return out;
}

}  // namespace growth
