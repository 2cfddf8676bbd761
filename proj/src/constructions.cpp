#include "growth/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace growth {

namespace {

// Shortlex stream over S^1, S^2, ...: yields each element once, at the first
// power reaching it.
template <typename Fn>
void scan_powers(const GroupModel& m, const std::vector<Word>& S, int max_power,
                 Fn&& visit) {
  std::unordered_set<std::string> seen{encode(Word{})};
  for (int pw = 1; pw <= max_power; ++pw) {
    for (const auto& w : power_set(m, S, pw)) {
      if (!seen.insert(encode(w)).second) continue;
      if (visit(w, pw)) return;
    }
  }
}

}  // namespace

std::optional<Word> try_find_hyperbolic_in_power(const GroupModel& m,
                                                 const std::vector<Word>& S,
                                                 const ActionConstants& c) {
  c.validate();
  std::optional<Word> found;
  scan_powers(m, S, static_cast<int>(c.M), [&](const Word& w, int) {
    if (translation_length(m, w) == 0) return false;
    found = w;
    return true;
  });
  return found;
}

Word find_hyperbolic_in_power(const GroupModel& m, const std::vector<Word>& S,
                              const ActionConstants& c) {
  c.validate();
  std::int64_t scanned = 0;
  std::optional<Word> found;
  scan_powers(m, S, static_cast<int>(c.M), [&](const Word& w, int) {
    ++scanned;
    if (translation_length(m, w) == 0) return false;
    found = w;
    return true;
  });
  if (!found) throw NoHyperbolicError(c.M, scanned);
  return *found;
}

DisplacementWitness large_displacement_element(const GroupModel& m,
                                               const std::vector<Word>& S,
                                               const ActionConstants& c) {
  c.validate();
  std::vector<Word> Sc = canonical_set(m, S);
  if (Sc.empty()) throw std::invalid_argument("empty generating set");
  JointDisplacement jd = joint_displacement(m, Sc);
  if (jd.value < 1)
    throw std::invalid_argument("joint displacement is 0: the generators share a fixed point");

  DisplacementWitness best;
  std::unordered_set<std::string> seen{encode(Word{})};
  for (int pw = 1; pw <= 2; ++pw) {
    bool any = false;
    for (const auto& g : power_set(m, Sc, pw)) {
      if (!seen.insert(encode(g)).second) continue;
      std::int64_t d = m.dist(jd.vertex, m.act(g, jd.vertex));
      if (d < jd.value - 8 * c.delta) continue;
      std::int64_t lam = translation_length(m, g);
      if (lam == 0 || lam < d - 16 * c.delta) continue;
      if (!any || d > best.displacement) {
        best = DisplacementWitness{g, jd.vertex, jd.value, d, lam, pw};
        any = true;
      }
    }
    if (any) {
      if (best.displacement - best.L_g > 40 * c.delta)
        throw std::logic_error("large-displacement witness strays from its axis");
      return best;
    }
  }
  throw std::runtime_error(
      "no hyperbolic element of large displacement in S^2; "
      "use find_hyperbolic_in_power with a larger power to diagnose the set");
}

FreePairCertificate build_free_pair(const GroupModel& m,
                                    const std::vector<Word>& conjugators,
                                    const DisplacementWitness& w,
                                    const ActionConstants& c, int depth) {
  c.validate();
  if (depth < 1) throw std::invalid_argument("ping-pong depth must be positive");
  if (w.L_g == 0) throw std::invalid_argument("free pair needs a hyperbolic witness");

  FreePairCertificate cert;
  cert.g = w.g;
  cert.x = w.x;
  cert.k = c.k();
  cert.power = w.power;
  cert.L_g = w.L_g;
  cert.lambda_floor = 10 * (2 * c.D * w.L_g + 100 * c.delta);
  cert.depth = depth;

  bool have_s = false;
  for (const auto& s : canonical_set(m, conjugators)) {
    Word conj = m.multiply(m.multiply(s, w.g), m.invert(s));
    if (axes_overlap(m, w.g, conj).kind != OverlapKind::Parallel) {
      cert.s = s;
      have_s = true;
      break;
    }
  }
  if (!have_s)
    throw std::runtime_error(
        "every conjugate axis is parallel to g's axis: the set generates a "
        "virtually cyclic group around it");

  cert.a = m.power(w.g, cert.k);
  cert.b = m.multiply(m.multiply(cert.s, cert.a), m.invert(cert.s));

  // Exhaustive relation check: walk all reduced words over {a, a^-1, b, b^-1}
  // up to `depth`; letters with index i and i^1 are mutually inverse.
  const Word* letters[4] = {&cert.a, nullptr, &cert.b, nullptr};
  Word ainv = m.invert(cert.a);
  Word binv = m.invert(cert.b);
  letters[1] = &ainv;
  letters[3] = &binv;
  const char* names[4] = {"a", "A", "b", "B"};

  struct Node {
    Word prod;
    int last;
    int len;
  };
  std::vector<Node> stack;
  for (int i = 0; i < 4; ++i) stack.push_back({*letters[i], i, 1});
  cert.passed = true;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (m.is_identity(node.prod)) {
      cert.passed = false;
      cert.failure = "reduced pair word of length " + std::to_string(node.len) +
                     " ending in " + names[node.last] + " collapses to the identity";
      break;
    }
    std::int64_t lam = translation_length(m, node.prod);
    if (lam < cert.lambda_floor) {
      cert.passed = false;
      cert.failure = "pair word has translation length " + std::to_string(lam) +
                     " below the floor " + std::to_string(cert.lambda_floor);
      break;
    }
    if (node.len == depth) continue;
    for (int i = 0; i < 4; ++i) {
      if (i == (node.last ^ 1)) continue;
      stack.push_back({m.multiply(node.prod, *letters[i]), i, node.len + 1});
    }
  }
  return cert;
}

namespace {

// Letter-level cyclic reduction: strip mutually inverse first/last letters,
// renormalizing each time (needed for the amalgam models).
Word cyclic_core(const GroupModel& m, Word w) {
  while (w.size() >= 2 && w.front() == inv(w.back())) {
    Word inner(w.begin() + 1, w.end() - 1);
    Word next = m.normalize(inner);
    if (next.size() >= w.size()) break;
    w = std::move(next);
  }
  return w;
}

// Smallest j >= 2 such that core is verified equal to r^j for a prefix r, or
// 0 when no such decomposition exists.
std::int64_t proper_power_order(const GroupModel& m, const Word& core) {
  std::size_t n = core.size();
  for (std::size_t period = 1; period <= n / 2; ++period) {
    if (n % period != 0) continue;
    bool repeats = true;
    for (std::size_t i = period; i < n && repeats; ++i)
      repeats = core[i] == core[i - period];
    if (!repeats) continue;
    Word root(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(period));
    std::int64_t j = static_cast<std::int64_t>(n / period);
    if (m.power(root, j) == core) return j;
  }
  return 0;
}

bool is_power_of(const GroupModel& m, const Word& u, std::int64_t lambda_u,
                 const Word& v, const SpacePoint& probe) {
  if (m.is_identity(v)) return true;
  std::int64_t reach = m.dist(probe, m.act(v, probe));
  std::int64_t bound = reach / std::max<std::int64_t>(lambda_u, 1) + 1;
  for (std::int64_t j = 1; j <= bound; ++j) {
    Word pj = m.power(u, j);
    if (v == pj || v == m.invert(pj)) return true;
  }
  return false;
}

}  // namespace

PrimitiveElement build_primitive_u(const GroupModel& m, const std::vector<Word>& S,
                                   const FreePairCertificate& pair,
                                   const ActionConstants& c, int ball_radius) {
  c.validate();
  if (!pair.passed) throw std::invalid_argument("free-pair certificate has not passed");

  PrimitiveElement out;
  out.power = pair.power;
  // u = a b^2 a^3 b a with a = g^k, b = s g^k s^-1, which spells out the
  // pattern g^k (s g^2k s^-1) g^3k (s g^k s^-1) g^k.
  Word u = pair.a;
  u = m.multiply(u, pair.b);
  u = m.multiply(u, pair.b);
  u = m.multiply(u, pair.a);
  u = m.multiply(u, pair.a);
  u = m.multiply(u, pair.a);
  u = m.multiply(u, pair.b);
  u = m.multiply(u, pair.a);
  out.u = u;
  out.construction = 8 * pair.k * pair.power + 4;

  auto fail = [&](const std::string& name, const std::string& detail) {
    out.checks[name] = false;
    if (out.failure.empty()) out.failure = name + ": " + detail;
  };

  std::int64_t budget = c.m() * pair.power;
  if (out.construction <= budget)
    out.checks["word_length"] = true;
  else
    fail("word_length", std::to_string(out.construction) + " letters exceed the budget " +
                            std::to_string(budget));

  std::int64_t lam = translation_length(m, u);
  if (lam >= pair.lambda_floor)
    out.checks["lambda_floor"] = true;
  else
    fail("lambda_floor", "lambda(u) = " + std::to_string(lam) + " below the floor " +
                             std::to_string(pair.lambda_floor));
  if (lam == 0) {
    fail("lambda_floor", "u is elliptic");
    out.passed = false;
    return out;
  }
  out.ax = axis(m, u);

  std::int64_t disp = m.dist(pair.x, m.act(u, pair.x));
  if (disp - lam <= 100 * c.delta)
    out.checks["axis_on_witness"] = true;
  else
    fail("axis_on_witness", "witness sits " + std::to_string((disp - lam) / 2) +
                                " off the axis, allowed " + std::to_string(50 * c.delta));

  std::vector<Word> ball = power_set(m, S, ball_radius);
  SpacePoint p0 = out.ax.p0;
  SpacePoint p1 = m.act(u, p0);

  bool primitive_ball = true;
  for (const auto& v : ball) {
    if (m.is_identity(v)) continue;
    if (is_power_of(m, u, lam, v, p0)) continue;
    Word conj = m.multiply(m.multiply(v, u), m.invert(v));
    if (axes_overlap(m, u, conj).kind == OverlapKind::Parallel) {
      primitive_ball = false;
      fail("primitive_ball", "ball element " + m.format(v) +
                                 " preserves the axis without being a power of u");
      break;
    }
  }
  if (primitive_ball) out.checks["primitive_ball"] = true;

  Word core = cyclic_core(m, u);
  std::int64_t order = proper_power_order(m, core);
  if (order == 0)
    out.checks["no_proper_power"] = true;
  else
    fail("no_proper_power", "u is a verified " + std::to_string(order) + "-th power");

  std::int64_t fixers = 0;
  for (const auto& v : ball) {
    if (m.dist(p0, m.act(v, p0)) <= 50 * c.delta &&
        m.dist(p1, m.act(v, p1)) <= 50 * c.delta)
      ++fixers;
  }
  if (fixers >= 1 && fixers <= c.D)
    out.checks["pointwise_fix_bound"] = true;
  else
    fail("pointwise_fix_bound", std::to_string(fixers) +
                                    " ball elements fix the axis pointwise, WPD count is " +
                                    std::to_string(c.D));

  out.passed = out.failure.empty();
  return out;
}

namespace {

PropertyCheck germ_check(const GroupModel& m, const Germ& a, const Germ& b,
                         bool want_equivalent, const std::string& note) {
  if (a.empty || b.empty)
    throw std::logic_error("separator germ is empty at " + note);
  std::int64_t g2 = gromov2(m, a.origin, a.endpoint, b.endpoint);
  PropertyCheck chk;
  chk.lhs = g2;
  chk.rhs = want_equivalent ? 8 * a.scale : 4 * a.scale;
  chk.passed = want_equivalent ? g2 >= chk.rhs : g2 <= chk.rhs;
  chk.note = note;
  return chk;
}

}  // namespace

SeparatorSet build_separators(const GroupModel& m, const std::vector<Word>& S,
                              const ActionConstants& c, int cancel_radius,
                              int pair_depth) {
  c.validate();
  std::vector<Word> Sc = canonical_set(m, S);
  if (Sc.empty()) throw std::invalid_argument("empty generating set");

  std::vector<Word> powered =
      canonical_set(m, power_set(m, Sc, static_cast<int>(2 * c.D * c.M)));
  JointDisplacement jd = joint_displacement(m, powered);
  std::int64_t scale = 100 * c.delta + 4 * c.D * jd.value;
  if (scale <= 0)
    throw std::invalid_argument("generating set has a common fixed point; no germ scale");

  SeparatorSet out;
  out.context = GermContext{Sc, jd.vertex, jd.value, scale};
  const SpacePoint& y = out.context.y;
  const std::int64_t delta_n = out.context.delta_n;

  DisplacementWitness witness = large_displacement_element(m, powered, c);
  if (witness.x != y)
    throw std::logic_error("displacement scan and germ context disagree on the basepoint");
  witness.power *= 2 * c.D * c.M;

  FreePairCertificate pair = build_free_pair(m, Sc, witness, c, pair_depth);
  if (!pair.passed)
    throw std::runtime_error("separator free pair failed: " + pair.failure);
  out.g = pair.g;
  out.s = pair.s;
  out.w = pair.a;
  out.z = pair.b;
  out.power = pair.power;
  out.b = c.b();

  // w-power ladder up to 80, then the four interleavings: u1 = w z w^2 z ...
  // w^20, u2 = w^21 z ... w^40 z, u3 = z w^41 ... z w^60, u4 = z w^61 ... z
  // w^80 z.
  std::vector<Word> wpow(81);
  for (int e = 1; e <= 80; ++e) wpow[e] = m.multiply(wpow[e - 1], out.w);
  auto weave = [&](int from, int to, bool lead_z, bool trail_z) {
    Word prod;
    for (int e = from; e <= to; ++e) {
      if (lead_z) prod = m.multiply(prod, out.z);
      prod = m.multiply(prod, wpow[e]);
      if (!lead_z && e < to) prod = m.multiply(prod, out.z);
    }
    if (trail_z) prod = m.multiply(prod, out.z);
    return prod;
  };
  out.u[0] = weave(1, 20, false, false);
  out.u[1] = weave(21, 40, false, true);
  out.u[2] = weave(41, 60, true, false);
  out.u[3] = weave(61, 80, true, true);

  auto raise = [&](const std::string& key, const PropertyCheck& chk) {
    out.report[key] = chk;
    if (!chk.passed)
      throw std::runtime_error("separator property " + key + " failed: lhs " +
                               std::to_string(chk.lhs) + " vs rhs " +
                               std::to_string(chk.rhs) +
                               (chk.note.empty() ? "" : " (" + chk.note + ")"));
  };

  // Word-length audit: every letter of u_i comes from a g^k or s g^k s^-1
  // block, so the construction budget bounds |u_i|_S.
  std::int64_t block = pair.k * pair.power;
  const std::int64_t expo_sum[4] = {210, 610, 1010, 1410};
  const std::int64_t z_count[4] = {19, 20, 20, 21};
  for (int i = 0; i < 4; ++i) {
    PropertyCheck chk;
    chk.lhs = expo_sum[i] * block + z_count[i] * (block + 2);
    chk.rhs = out.b;
    chk.passed = chk.lhs <= chk.rhs;
    chk.note = "construction letters of u" + std::to_string(i + 1);
    raise("b:u" + std::to_string(i + 1), chk);
  }

  for (int i = 0; i < 4; ++i) {
    out.u_y[i] = m.act(out.u[i], y);
    out.uinv_y[i] = m.act(m.invert(out.u[i]), y);
    out.d_y[i] = m.dist(y, out.u_y[i]);
  }

  out.gamma[0] = germ_for(m, out.w, y, delta_n);
  out.gamma[1] = germ_for(m, out.z, y, delta_n);
  out.gamma[2] = germ_for(m, m.invert(out.w), y, delta_n);
  out.gamma[3] = germ_for(m, m.invert(out.z), y, delta_n);
  for (int i = 0; i < 4; ++i)
    if (out.gamma[i].empty)
      throw std::runtime_error("separator germ gamma" + std::to_string(i + 1) +
                               " is empty: block displacement below the germ scale");

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      raise("opposite:g" + std::to_string(i + 1) + "g" + std::to_string(j + 1),
            germ_check(m, out.gamma[i], out.gamma[j], false,
                       "gamma" + std::to_string(i + 1) + " vs gamma" + std::to_string(j + 1)));

  // Property (i): forward germs follow the leading block (w for u1, u2; z for
  // u3, u4), backward germs follow the trailing block inverted.
  const int fwd_gamma[4] = {0, 0, 1, 1};
  const int bwd_gamma[4] = {2, 3, 2, 3};
  for (int i = 0; i < 4; ++i) {
    Germ fwd = germ_of(m, y, out.u_y[i], delta_n);
    raise("i:u" + std::to_string(i + 1) + "_forward",
          germ_check(m, fwd, out.gamma[fwd_gamma[i]], true,
                     "germ of [y, u" + std::to_string(i + 1) + " y]"));
    Germ bwd = germ_of(m, y, out.uinv_y[i], delta_n);
    raise("i:u" + std::to_string(i + 1) + "_backward",
          germ_check(m, bwd, out.gamma[bwd_gamma[i]], true,
                     "germ of [y, u" + std::to_string(i + 1) + "^-1 y]"));
  }

  for (int i = 0; i < 4; ++i) {
    std::int64_t lam = translation_length(m, out.u[i]);
    PropertyCheck lchk;
    lchk.lhs = lam;
    lchk.rhs = 100 * delta_n;
    lchk.passed = lam >= lchk.rhs;
    raise("ii:lambda_u" + std::to_string(i + 1), lchk);
    PropertyCheck achk;
    achk.lhs = out.d_y[i] - lam;  // twice the distance from y to the axis
    achk.rhs = 2 * delta_n;
    achk.passed = achk.lhs <= achk.rhs;
    raise("ii:axis_u" + std::to_string(i + 1), achk);
  }

  // Property (iii): exhaustive small-cancellation sweep. Translates of one
  // separator segment may only graze another at a tenth of either length.
  // The identity is excluded for i = j (it fixes the segment outright; the
  // bundled actions have no other pointwise stabilizer elements).
  PropertyCheck sweep;
  sweep.passed = true;
  std::int64_t worst_margin = -1;
  for (const auto& v : power_set(m, Sc, cancel_radius)) {
    SpacePoint vy = m.act(v, y);
    bool v_is_id = m.is_identity(v);
    for (int j = 0; j < 4; ++j) {
      SpacePoint vuy = m.act(v, out.u_y[j]);
      for (int i = 0; i < 4; ++i) {
        if (i == j && v_is_id) continue;
        SegmentMeet meet = segment_meet(m, y, out.u_y[i], vy, vuy);
        if (!meet.intersects) continue;
        std::int64_t cap = std::min(out.d_y[i], out.d_y[j]);
        std::int64_t margin = cap - 10 * meet.diameter;
        if (worst_margin < 0 || margin < worst_margin) {
          worst_margin = margin;
          sweep.lhs = 10 * meet.diameter;
          sweep.rhs = cap;
          sweep.note = "i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) +
                       " w=" + m.format(v);
        }
        if (margin < 0) {
          sweep.passed = false;
          raise("iii", sweep);
        }
      }
    }
  }
  raise("iii", sweep);

  out.report["iv"] =
      PropertyCheck{true, 0, 0, "kernel-valued separators do not arise for exact models"};
  out.passed = true;
  return out;
}

namespace {

// Opposition test against a cached orbit point, inlining germ_opposite so the
// segment length d(y, u y) is not recomputed per call. Returns true when the
// probe germ is empty (short-orbit convention).
bool side_opposite(const GroupModel& m, const SpacePoint& probe, std::int64_t d_probe,
                   const SpacePoint& tip, std::int64_t d_tip, std::int64_t delta_n) {
  if (d_probe < 10 * delta_n) return true;
  std::int64_t g2 = d_probe + d_tip - m.dist(probe, tip);
  return g2 <= 4 * delta_n;
}

}  // namespace

int choose_admissible(const GroupModel& m, const Word& w, const Word& wp,
                      const SeparatorSet& seps) {
  const SpacePoint& y = seps.context.y;
  std::int64_t delta_n = seps.context.delta_n;

  SpacePoint back = m.act(m.invert(w), y);  // w^-1 y: [y, w^-1 y] mirrors the
  std::int64_t d_w = m.dist(y, back);       // arrival germ of [y, w y] at w y
  SpacePoint fwd = m.act(wp, y);
  std::int64_t d_wp = m.dist(y, fwd);

  for (int i = 0; i < 4; ++i) {
    if (!side_opposite(m, back, d_w, seps.u_y[i], seps.d_y[i], delta_n)) continue;
    if (!side_opposite(m, fwd, d_wp, seps.uinv_y[i], seps.d_y[i], delta_n)) continue;
    // Concatenation bound d(y, w u y) >= d(y, w y) + d(y, u y) - 4 delta_n;
    // it is a consequence of germ opposition, so the short-orbit convention
    // (empty germ) waives it.
    if (d_w >= 10 * delta_n) {
      std::int64_t got = m.dist(y, m.act(m.multiply(w, seps.u[i]), y));
      std::int64_t floor = d_w + seps.d_y[i] - 4 * delta_n;
      if (got < floor)
        throw std::logic_error("admissible separator violates the concatenation bound: " +
                               std::to_string(got) + " < " + std::to_string(floor));
    }
    return i + 1;
  }
  throw std::logic_error(
      "no admissible separator: mutually opposite germs must rule out at most "
      "one index per side, so the separator set is broken");
}

ForbiddenVerdict forbidden_test(const GroupModel& m, const Word& wp,
                                const std::vector<Word>& ball,
                                const SeparatorSet& seps) {
  const SpacePoint& y = seps.context.y;
  std::int64_t delta_n = seps.context.delta_n;

  SpacePoint back = m.act(m.invert(wp), y);
  std::int64_t d_wp = m.dist(y, back);

  // Tail tips wp u y for each separator admissible for wp (one-sided).
  std::array<SpacePoint, 4> tip;
  std::array<std::int64_t, 4> d_tip{};
  std::array<bool, 4> usable{};
  for (int i = 0; i < 4; ++i) {
    usable[i] = side_opposite(m, back, d_wp, seps.u_y[i], seps.d_y[i], delta_n);
    if (!usable[i]) continue;
    tip[i] = m.act(wp, seps.u_y[i]);
    d_tip[i] = m.dist(y, tip[i]);
  }

  for (const auto& w : ball) {
    SpacePoint wy = m.act(w, y);
    std::int64_t d_w = m.dist(y, wy);
    for (int i = 0; i < 4; ++i) {
      if (!usable[i]) continue;
      std::int64_t rhs = seps.d_y[i];
      if (5 * std::llabs(d_tip[i] - d_w) > rhs) continue;  // triangle floor
      std::int64_t dd = m.dist(wy, tip[i]);
      if (5 * dd <= rhs) return ForbiddenVerdict{true, w, i + 1, 5 * dd, rhs};
    }
  }
  return ForbiddenVerdict{};
}

AdequateReport adequate_selection(const GroupModel& m, const std::vector<Word>& ball,
                                  const SeparatorSet& seps, const ActionConstants& c) {
  c.validate();
  AdequateReport rep;
  rep.ball = static_cast<std::int64_t>(ball.size());
  std::vector<Word> keep;
  for (const auto& wp : ball) {
    if (forbidden_test(m, wp, ball, seps).forbidden)
      ++rep.forbidden;
    else
      keep.push_back(wp);
  }
  rep.non_forbidden = static_cast<std::int64_t>(keep.size());
  if (rep.forbidden > c.D * rep.non_forbidden)
    throw std::logic_error("forbidden elements outnumber D times the rest: " +
                           std::to_string(rep.forbidden) + " > " + std::to_string(c.D) +
                           " * " + std::to_string(rep.non_forbidden));

  // One representative per right coset of each pointwise axis stabilizer;
  // the bundled actions have trivial stabilizers, so everything survives.
  if (m.pointwise_line_stabilizer_order() == 1) {
    rep.adequate = std::move(keep);
  } else {
    for (const auto& w : keep) {
      bool fresh = true;
      for (const auto& v : rep.adequate) {
        Word q = m.multiply(w, m.invert(v));
        for (int i = 0; i < 4 && fresh; ++i) {
          SpacePoint p0 = axis(m, seps.u[i]).p0;
          SpacePoint p1 = m.act(seps.u[i], p0);
          if (m.dist(p0, m.act(q, p0)) == 0 && m.dist(p1, m.act(q, p1)) == 0) fresh = false;
        }
        if (!fresh) break;
      }
      if (fresh) rep.adequate.push_back(w);
    }
  }

  std::int64_t spread = c.D * c.D * c.D * c.D * (c.D + 1);
  if (rep.ball > spread * static_cast<std::int64_t>(rep.adequate.size()))
    throw std::logic_error("adequate floor violated: " + std::to_string(rep.ball) + " > " +
                           std::to_string(spread) + " * " +
                           std::to_string(rep.adequate.size()));
  return rep;
}

Word phi_map(const GroupModel& m, const std::vector<Word>& tuple,
             const SeparatorSet& seps) {
  if (tuple.empty()) throw std::invalid_argument("phi needs a nonempty tuple");
  Word prod;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    prod = m.multiply(prod, tuple[i]);
    const Word& next = i + 1 < tuple.size() ? tuple[i + 1] : Word{};
    int idx = choose_admissible(m, tuple[i], next, seps);
    prod = m.multiply(prod, seps.u[static_cast<std::size_t>(idx - 1)]);
  }
  return prod;
}

PhiReport phi_injectivity_check(const GroupModel& m, const std::vector<Word>& S,
                                const SeparatorSet& seps, const ActionConstants& c,
                                int radius, int q, std::int64_t samples) {
  c.validate();
  if (q < 1) throw std::invalid_argument("tuple length must be positive");
  PhiReport rep;
  rep.radius = radius;
  rep.q = q;
  rep.hausdorff_bound = 2 * seps.context.delta_n + 100 * c.delta;

  std::vector<Word> ball = power_set(m, canonical_set(m, S), radius);
  AdequateReport adq = adequate_selection(m, ball, seps, c);
  rep.ball = adq.ball;
  rep.adequate = static_cast<std::int64_t>(adq.adequate.size());

  const auto& pool = adq.adequate;
  std::vector<std::size_t> index(static_cast<std::size_t>(q), 0);
  std::map<Hash128, std::vector<std::size_t>> images;
  const SpacePoint& y = seps.context.y;

  auto rebuild = [&](const std::vector<std::size_t>& idx) {
    std::vector<Word> tuple;
    for (auto i : idx) tuple.push_back(pool[i]);
    return tuple;
  };
  auto tuple_label = [&](const std::vector<std::size_t>& idx) {
    std::string s = "(";
    for (std::size_t i = 0; i < idx.size(); ++i)
      s += (i ? ", " : "") + m.format(pool[idx[i]]);
    return s + ")";
  };

  bool more = !pool.empty();
  while (more) {
    std::vector<Word> tuple = rebuild(index);
    Word image = phi_map(m, tuple, seps);
    ++rep.tuples;
    Hash128 h = hash128(image);
    auto [it, fresh] = images.try_emplace(h, index);
    if (!fresh) {
      Word other = phi_map(m, rebuild(it->second), seps);
      if (other == image)
        throw std::logic_error("phi collision between tuples " + tuple_label(it->second) +
                               " and " + tuple_label(index));
    }

    if (rep.sampled < samples) {
      ++rep.sampled;
      std::vector<SpacePoint> corners{y};
      Word prod;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        prod = m.multiply(prod, tuple[i]);
        corners.push_back(m.act(prod, y));
        const Word& next = i + 1 < tuple.size() ? tuple[i + 1] : Word{};
        int idx = choose_admissible(m, tuple[i], next, seps);
        prod = m.multiply(prod, seps.u[static_cast<std::size_t>(idx - 1)]);
        corners.push_back(m.act(prod, y));
      }
      std::int64_t gap = hausdorff_broken_vs_segment(m, corners);
      rep.hausdorff_max = std::max(rep.hausdorff_max, gap);
      if (gap > rep.hausdorff_bound)
        throw std::logic_error("broken geodesic strays " + std::to_string(gap) +
                               " from the straight segment, allowed " +
                               std::to_string(rep.hausdorff_bound));
    }

    more = false;
    for (std::size_t pos = index.size(); pos-- > 0;) {
      if (++index[pos] < pool.size()) {
        more = true;
        break;
      }
      index[pos] = 0;
    }
  }
  rep.injective = true;
  return rep;
}

LowerBoundCertificate lower_bound_audit(const GroupModel& m, const std::vector<Word>& S,
                                        const ActionConstants& c, int depth,
                                        int ball_depth) {
  c.validate();
  std::vector<Word> Sc = canonical_set(m, S);
  if (Sc.empty()) throw std::invalid_argument("empty generating set");
  (void)find_hyperbolic_in_power(m, Sc, c);  // throws when S^M is elliptic-only

  LowerBoundCertificate cert;
  cert.depth = depth;
  cert.p_formula = c.p();

  int MD = static_cast<int>(c.M * c.D);
  std::vector<Word> powered = canonical_set(m, power_set(m, Sc, MD));
  DisplacementWitness witness = large_displacement_element(m, powered, c);
  witness.power *= MD;

  FreePairCertificate pair = build_free_pair(m, Sc, witness, c, depth);
  if (!pair.passed) {
    cert.failure = "free pair: " + pair.failure;
    return cert;
  }
  PrimitiveElement prim = build_primitive_u(m, Sc, pair, c);
  if (!prim.passed) {
    cert.failure = "primitive element: " + prim.failure;
    return cert;
  }
  cert.u = prim.u;

  // Maximal coset-separated subset of S: with trivial pointwise stabilizers
  // distinct generators already sit in distinct cosets.
  if (m.pointwise_line_stabilizer_order() == 1) {
    cert.W = Sc;
  } else {
    SpacePoint p0 = prim.ax.p0;
    SpacePoint p1 = m.act(prim.u, p0);
    for (const auto& w : Sc) {
      bool fresh = true;
      for (const auto& v : cert.W) {
        Word qd = m.multiply(w, m.invert(v));
        if (m.dist(p0, m.act(qd, p0)) == 0 && m.dist(p1, m.act(qd, p1)) == 0) {
          fresh = false;
          break;
        }
      }
      if (fresh) cert.W.push_back(w);
    }
  }
  if (c.D * static_cast<std::int64_t>(cert.W.size()) <
      static_cast<std::int64_t>(Sc.size()))
    throw std::logic_error("coset-separated subset is smaller than |S|/D");

  cert.U = m.power(prim.u, 20 * c.D);
  for (const auto& w : cert.W)
    cert.B.push_back(m.multiply(m.multiply(w, cert.U), m.invert(w)));

  // Exhaustive ping-pong over the conjugate basis.
  std::size_t rank = cert.B.size();
  std::vector<Word> letters;
  for (const auto& b : cert.B) {
    letters.push_back(b);
    letters.push_back(m.invert(b));
  }
  struct Node {
    Word prod;
    std::size_t last;
    int len;
  };
  std::vector<Node> stack;
  for (std::size_t i = 0; i < 2 * rank; ++i) stack.push_back({letters[i], i, 1});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (m.is_identity(node.prod)) {
      cert.failure = "ping-pong relation of length " + std::to_string(node.len) +
                     " in the conjugate basis";
      return cert;
    }
    if (node.len == depth) continue;
    for (std::size_t i = 0; i < 2 * rank; ++i) {
      if (i == (node.last ^ 1)) continue;
      stack.push_back({m.multiply(node.prod, letters[i]), i, node.len + 1});
    }
  }

  std::int64_t p_actual = 20 * c.D * prim.construction + 2;
  cert.p = std::max(cert.p_formula, p_actual);
  cert.implied =
      std::pow(static_cast<double>(cert.W.size()), 1.0 / static_cast<double>(cert.p));
  cert.weak = c.A() * std::pow(static_cast<double>(Sc.size()), c.A());
  cert.certificate_id = "pingpong-" + m.kind() + "-N" + std::to_string(depth) +
                        "-rank" + std::to_string(rank) + "-p" + std::to_string(cert.p);

  BallLevels levels = enumerate_levels(m, Sc, ball_depth);
  cert.estimate = growth_estimate(levels);
  double attached = certified_lower_bound(m, Sc, cert.B, static_cast<int>(cert.p), true,
                                          cert.certificate_id, &cert.estimate);
  if (std::fabs(attached - cert.implied) > 1e-12)
    throw std::logic_error("attached lower bound drifts from the implied bound");
  if (cert.weak > cert.implied + 1e-9)
    throw std::logic_error("closed-form floor exceeds the implied bound");
  if (cert.weak > cert.estimate.certified_upper + 1e-9)
    throw std::logic_error("closed-form floor exceeds the certified upper bound");

  cert.passed = true;
  return cert;
}

}  // namespace growth
