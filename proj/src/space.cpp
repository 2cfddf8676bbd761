#include "growth/space.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace growth {

std::int64_t displacement(const GroupModel& m, const Word& g, const SpacePoint& x) {
  return m.dist(x, m.act(g, x));
}

std::int64_t translation_length(const GroupModel& m, const Word& g) {
  SpacePoint x = m.base();
  std::int64_t d1 = m.dist(x, m.act(g, x));
  std::int64_t d2 = m.dist(x, m.act(m.multiply(g, g), x));
  return std::max<std::int64_t>(0, d2 - d1);
}

IsometryClass classify(const GroupModel& m, const Word& g) {
  return translation_length(m, g) > 0 ? IsometryClass::Hyperbolic : IsometryClass::Elliptic;
}

MinDisplacement min_displacement_element(const GroupModel& m, const Word& g) {
  SpacePoint x = m.base();
  SpacePoint gx = m.act(g, x);
  std::int64_t d = m.dist(x, gx);
  std::int64_t lam = translation_length(m, g);
  if ((d - lam) % 2 != 0) throw std::logic_error("displacement parity violated");
  SpacePoint w = m.point_on_segment(x, gx, (d - lam) / 2);
  if (m.dist(w, m.act(g, w)) != lam)
    throw std::logic_error("min displacement witness check failed");
  return MinDisplacement{lam, std::move(w)};
}

Axis axis(const GroupModel& m, const Word& g) {
  MinDisplacement md = min_displacement_element(m, g);
  if (md.L == 0) throw std::invalid_argument("axis of an elliptic element");
  return Axis{g, md.L, std::move(md.witness)};
}

SpacePoint axis_point(const GroupModel& m, const Axis& ax, std::int64_t k) {
  std::int64_t q = k / ax.lambda;
  std::int64_t r = k % ax.lambda;
  if (r < 0) {
    r += ax.lambda;
    --q;
  }
  SpacePoint p = m.point_on_segment(ax.p0, m.act(ax.g, ax.p0), r);
  if (q == 0) return p;
  return m.act(m.power(ax.g, q), p);
}

JointDisplacement joint_displacement(const GroupModel& m, const std::vector<Word>& set) {
  if (set.empty()) throw std::invalid_argument("joint displacement of an empty set");
  std::vector<Word> gens;
  for (const auto& w : set) gens.push_back(m.normalize(w));
  SpacePoint v = m.base();
  auto max_disp = [&](const SpacePoint& p) {
    std::int64_t best = 0;
    for (const auto& g : gens) best = std::max(best, m.dist(p, m.act(g, p)));
    return best;
  };
  std::int64_t cur = max_disp(v);
  std::int64_t steps = 0;
  while (cur > 0) {
    bool moved = false;
    for (const auto& g : gens) {
      SpacePoint gv = m.act(g, v);
      if (m.dist(v, gv) != cur) continue;
      SpacePoint cand = m.point_on_segment(v, gv, 1);
      std::int64_t cd = max_disp(cand);
      if (cd < cur) {
        v = std::move(cand);
        cur = cd;
        ++steps;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (steps > 10'000'000) throw std::logic_error("joint displacement descent diverged");
  }
  return JointDisplacement{cur, std::move(v), steps};
}

void ActionConstants::validate() const {
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  if (D < 1) throw std::invalid_argument("D must be positive");
  if (M < 1) throw std::invalid_argument("M must be positive");
}

GermContext make_germ_context(const GroupModel& m, const std::vector<Word>& S,
                              const ActionConstants& c) {
  c.validate();
  std::vector<Word> powered =
      canonical_set(m, power_set(m, S, static_cast<int>(2 * c.D * c.M)));
  JointDisplacement jd = joint_displacement(m, powered);
  std::int64_t scale = 100 * c.delta + 4 * c.D * jd.value;
  if (scale <= 0)
    throw std::invalid_argument("generating set has a common fixed point; no germ scale");
  return GermContext{S, std::move(jd.vertex), jd.value, scale};
}

std::int64_t gromov2(const GroupModel& m, const SpacePoint& a, const SpacePoint& b,
                     const SpacePoint& c) {
  return m.dist(a, b) + m.dist(a, c) - m.dist(b, c);
}

SegmentMeet segment_meet(const GroupModel& m, const SpacePoint& a, const SpacePoint& b,
                         const SpacePoint& c, const SpacePoint& d) {
  std::int64_t dcd = m.dist(c, d);
  std::int64_t tc2 = gromov2(m, a, b, c);  // foot of c on [a,b], doubled
  std::int64_t td2 = gromov2(m, a, b, d);
  std::int64_t gc2 = gromov2(m, c, a, b);  // distance of c to [a,b], doubled
  std::int64_t gd2 = gromov2(m, d, a, b);
  std::int64_t spread2 = std::abs(tc2 - td2);
  SegmentMeet out;
  if (gc2 + spread2 + gd2 == 2 * dcd) {
    out.intersects = true;
    if (spread2 % 2 != 0) throw std::logic_error("segment meet parity violated");
    out.diameter = spread2 / 2;
    return out;
  }
  if (spread2 != 0) throw std::logic_error("disjoint segments with spread projection");
  std::int64_t gap4 = gc2 + gd2 - 2 * dcd;
  if (gap4 <= 0 || gap4 % 4 != 0) throw std::logic_error("segment gap arithmetic violated");
  out.gap = gap4 / 4;
  return out;
}

namespace {

// Feet of the endpoints of [c,d] on [a,b], measured from a (doubled).
struct Feet {
  std::int64_t lo2 = 0;
  std::int64_t hi2 = 0;
};

Feet feet_on(const GroupModel& m, const SpacePoint& a, const SpacePoint& b,
             const SpacePoint& c, const SpacePoint& d) {
  std::int64_t tc2 = gromov2(m, a, b, c);
  std::int64_t td2 = gromov2(m, a, b, d);
  return Feet{std::min(tc2, td2), std::max(tc2, td2)};
}

bool interior(const Feet& f, std::int64_t len) {
  return f.lo2 >= 2 && f.hi2 <= 2 * len - 2;
}

}  // namespace

AxesOverlap axes_overlap(const GroupModel& m, const Word& g, const Word& h) {
  Axis ag = axis(m, g);
  Axis ah = axis(m, h);
  if (m.commute(g, h)) return AxesOverlap{OverlapKind::Parallel, 0, 0};
  std::int64_t d0 = m.dist(ag.p0, ah.p0);
  std::int64_t reach = d0 + 4 * (ag.lambda + ah.lambda) + 16;
  for (int scale = 1; scale <= 8; scale *= 2) {
    std::int64_t rg = ((scale * reach) / ag.lambda + 1) * ag.lambda;
    std::int64_t rh = ((scale * reach) / ah.lambda + 1) * ah.lambda;
    SpacePoint a = axis_point(m, ag, -rg), b = axis_point(m, ag, rg);
    SpacePoint c = axis_point(m, ah, -rh), d = axis_point(m, ah, rh);
    SegmentMeet meet = segment_meet(m, a, b, c, d);
    // The intersection of two lines in a tree is a single segment, so the
    // segment answer is the axis answer once the relevant stretch sits
    // strictly inside both sampled windows.
    if (!interior(feet_on(m, a, b, c, d), 2 * rg)) continue;
    if (!interior(feet_on(m, c, d, a, b), 2 * rh)) continue;
    AxesOverlap out;
    out.kind = meet.intersects ? OverlapKind::Crossing : OverlapKind::Disjoint;
    out.diameter = meet.diameter;
    out.gap = meet.gap;
    return out;
  }
  throw std::logic_error("axes overlap window did not stabilize");
}

Germ germ_of(const GroupModel& m, const SpacePoint& x, const SpacePoint& y,
             std::int64_t scale) {
  if (scale < 1) throw std::invalid_argument("germ scale must be positive");
  return Germ{x, y, scale, m.dist(x, y) < 10 * scale};
}

Germ germ_for(const GroupModel& m, const Word& g, const SpacePoint& origin,
              std::int64_t scale) {
  return germ_of(m, origin, m.act(g, origin), scale);
}

namespace {

std::int64_t germ_product2(const GroupModel& m, const Germ& a, const Germ& b) {
  if (a.empty || b.empty) throw std::invalid_argument("comparison of an empty germ");
  if (a.origin != b.origin) throw std::invalid_argument("germ origins differ");
  if (a.scale != b.scale) throw std::invalid_argument("germ scales differ");
  return gromov2(m, a.origin, a.endpoint, b.endpoint);
}

}  // namespace

bool germ_equivalent(const GroupModel& m, const Germ& a, const Germ& b) {
  return germ_product2(m, a, b) >= 8 * a.scale;
}

bool germ_opposite(const GroupModel& m, const Germ& a, const Germ& b) {
  return germ_product2(m, a, b) <= 4 * a.scale;
}

std::int64_t estimate_uniform_wpd_D(const GroupModel& m, const Word& g,
                                    std::int64_t epsilon, int word_radius) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
  MinDisplacement md = min_displacement_element(m, g);
  if (md.L == 0) throw std::invalid_argument("wpd estimate needs a hyperbolic element");
  SpacePoint x = md.witness;
  Word gc;
  SpacePoint y = x;
  for (int c = 1;; ++c) {
    gc = m.multiply(gc, g);
    y = m.act(gc, x);
    if (m.dist(x, y) > 2 * epsilon) break;
    if (c > 1'000'000) throw std::logic_error("wpd power search diverged");
  }
  std::vector<Word> gens;
  for (int a = 0; a < m.alphabet(); ++a) {
    gens.push_back(m.normalize(Word{make_letter(a, true)}));
    gens.push_back(m.normalize(Word{make_letter(a, false)}));
  }
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::deque<Word> queue{Word{}};
  std::int64_t count = 0;
  for (int depth = 0; depth <= word_radius && !queue.empty(); ++depth) {
    std::size_t level = queue.size();
    for (std::size_t i = 0; i < level; ++i) {
      Word w = std::move(queue.front());
      queue.pop_front();
      if (m.dist(x, m.act(w, x)) <= epsilon && m.dist(y, m.act(w, y)) <= epsilon) ++count;
      if (depth == word_radius) continue;
      for (const auto& s : gens) {
        Word nw = m.multiply(w, s);
        if (seen.insert(nw).second) queue.push_back(std::move(nw));
      }
    }
  }
  return count;
}

std::int64_t estimate_uniform_wpd_D(const GroupModel& m, const std::vector<Word>& gens,
                                    std::int64_t epsilon, int word_radius,
                                    int sample_power, std::size_t max_samples) {
  if (sample_power < 1) throw std::invalid_argument("sample power must be positive");
  if (max_samples == 0) throw std::invalid_argument("sample budget must be positive");
  std::vector<Word> pool = power_set(m, gens, sample_power);
  std::int64_t best = -1;
  std::size_t used = 0;
  for (const auto& g : pool) {
    if (used == max_samples) break;
    if (translation_length(m, g) == 0) continue;
    ++used;
    best = std::max(best, estimate_uniform_wpd_D(m, g, epsilon, word_radius));
  }
  if (best < 0) throw std::invalid_argument("no hyperbolic element among the samples");
  return best;
}

std::int64_t hausdorff_broken_vs_segment(const GroupModel& m,
                                         const std::vector<SpacePoint>& points) {
  if (points.size() < 2) throw std::invalid_argument("broken geodesic needs two points");
  const SpacePoint& p0 = points.front();
  const SpacePoint& pn = points.back();
  std::int64_t best2 = 0;
  for (const auto& p : points)
    best2 = std::max(best2, std::max<std::int64_t>(0, gromov2(m, p, p0, pn)));
  if (best2 % 2 != 0) throw std::logic_error("corner distance parity violated");
  return best2 / 2;
}

}  // namespace growth
