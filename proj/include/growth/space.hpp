#pragma once

#include <cstdint>
#include <vector>

#include "growth/group.hpp"

namespace growth {

// Geometry of the model's tree action. Distances are integers, so every
// quantity here is exact; half-integer values are returned doubled where
// noted.

// Configured constants of the action (hyperbolicity delta, the uniform WPD
// count D, and the power M needed to reach a hyperbolic element). Everything
// derived is a method so it can never go stale.
struct ActionConstants {
  std::int64_t delta = 0;  // 0 for all bundled tree models
  std::int64_t D = 1;
  std::int64_t M = 1;
  std::int64_t T() const { return 50 * delta / D; }  // floor on lambda(g)
  std::int64_t k() const { return 60 * D; }
  std::int64_t m() const { return 14 * k() + 4; }  // = 844 D
  std::int64_t b() const { return 343640 * D * D * M + 22; }
  std::int64_t p() const { return 20 * M * D * D * m() + 2; }  // = 1/A
  double A() const { return 1.0 / static_cast<double>(p()); }
  void validate() const;  // throws unless delta >= 0, D >= 1, M >= 1
};

std::int64_t displacement(const GroupModel& m, const Word& g, const SpacePoint& x);

// Translation length via lambda(g) = max(0, d(x, g^2 x) - d(x, g x)), exact on
// trees for any basepoint.
std::int64_t translation_length(const GroupModel& m, const Word& g);

enum class IsometryClass { Elliptic, Hyperbolic };

IsometryClass classify(const GroupModel& m, const Word& g);

struct MinDisplacement {
  std::int64_t L = 0;  // equals lambda(g) for hyperbolic g, 0 for elliptic
  SpacePoint witness;  // fixed point if elliptic, axis point if hyperbolic
};

MinDisplacement min_displacement_element(const GroupModel& m, const Word& g);

// Axis of a hyperbolic element, parametrized by integer arc length with
// point(0) = witness and point(k + lambda) = g . point(k).
struct Axis {
  Word g;
  std::int64_t lambda = 0;
  SpacePoint p0;
};

Axis axis(const GroupModel& m, const Word& g);
SpacePoint axis_point(const GroupModel& m, const Axis& ax, std::int64_t k);

// Joint displacement L(S) = min over vertices of max over s in S of d(v, sv),
// located by convex descent. At the returned vertex no first-step neighbor
// toward a maximal displacement improves, which certifies a global minimum
// since each displacement function is convex on the tree.
struct JointDisplacement {
  std::int64_t value = 0;
  SpacePoint vertex;
  std::int64_t descent_steps = 0;
};

JointDisplacement joint_displacement(const GroupModel& m, const std::vector<Word>& set);

// Gromov product (b|c)_a = (d(a,b) + d(a,c) - d(b,c)) / 2, doubled to stay
// integral.
std::int64_t gromov2(const GroupModel& m, const SpacePoint& a, const SpacePoint& b,
                     const SpacePoint& c);

// Intersection of the segments [a,b] and [c,d]: whether they meet and the
// diameter of the (always convex) intersection; `gap` is the distance between
// the segments when they do not meet.
struct SegmentMeet {
  bool intersects = false;
  std::int64_t diameter = 0;
  std::int64_t gap = 0;
};

SegmentMeet segment_meet(const GroupModel& m, const SpacePoint& a, const SpacePoint& b,
                         const SpacePoint& c, const SpacePoint& d);

enum class OverlapKind { Disjoint, Crossing, Parallel };

// Relative position of the axes of two hyperbolic elements. Parallel means
// equal axes (detected by commutation, which is equivalent here because all
// bundled actions have trivial pointwise line stabilizers); otherwise the
// intersection is a finite segment whose diameter is certified by recomputing
// over an extended stretch of both axes.
struct AxesOverlap {
  OverlapKind kind = OverlapKind::Disjoint;
  std::int64_t diameter = 0;  // intersection diameter; 0 for Disjoint/Parallel
  std::int64_t gap = 0;       // distance between axes when Disjoint
};

AxesOverlap axes_overlap(const GroupModel& m, const Word& g, const Word& h);

// Basepoint and scale for germ comparisons attached to one generating set:
// y realizes L(S^(2DM)) and the scale is delta_n = 100 delta + 4 D L(S^(2DM)).
struct GermContext {
  std::vector<Word> S;
  SpacePoint y;
  std::int64_t L_power = 0;  // L(S^(2DM))
  std::int64_t delta_n = 0;
};

// Throws when the powered set has joint displacement 0 (a common fixed point
// leaves no scale to compare germs at).
GermContext make_germ_context(const GroupModel& m, const std::vector<Word>& S,
                              const ActionConstants& c);

// Initial direction of the segment [origin, endpoint] at viewing distance
// 10 * scale. Segments shorter than that carry an empty germ, which compares
// with nothing.
struct Germ {
  SpacePoint origin;
  SpacePoint endpoint;
  std::int64_t scale = 0;
  bool empty = true;
};

Germ germ_of(const GroupModel& m, const SpacePoint& x, const SpacePoint& y,
             std::int64_t scale);
// Germ of [origin, g . origin], the direction in which g moves the origin.
Germ germ_for(const GroupModel& m, const Word& g, const SpacePoint& origin,
              std::int64_t scale);
// Both predicates require matching origin and scale and non-empty germs.
// With D = scale and doubled Gromov products, segments [x,y], [x,z] are
// equivalent when |y-z| <= |x-y| + |x-z| - 8D and opposite when
// |y-z| >= |x-y| + |x-z| - 4D; in between neither holds.
bool germ_equivalent(const GroupModel& m, const Germ& a, const Germ& b);
bool germ_opposite(const GroupModel& m, const Germ& a, const Germ& b);

// Count of group elements in the word ball of the given radius that move both
// x and g^c x by at most epsilon, where x is an axis point of g and c is the
// smallest power with d(x, g^c x) > 2 * epsilon. This is the WPD witness count
// whose maximum over elements bounds the acylindricity constant from below.
std::int64_t estimate_uniform_wpd_D(const GroupModel& m, const Word& g,
                                    std::int64_t epsilon, int word_radius);
// Maximum of the count above over every hyperbolic element of sample_power
// products of the generators, capped at max_samples elements in canonical
// order.
std::int64_t estimate_uniform_wpd_D(const GroupModel& m, const std::vector<Word>& gens,
                                    std::int64_t epsilon, int word_radius,
                                    int sample_power, std::size_t max_samples);

// Exact Hausdorff distance between the broken geodesic through `points` and
// the straight segment joining its endpoints. The broken path is connected
// and contains both endpoints, so in a tree it covers the segment; the
// distance is the largest corner-to-segment distance, since distance to a
// segment is convex along each piece.
std::int64_t hausdorff_broken_vs_segment(const GroupModel& m,
                                         const std::vector<SpacePoint>& points);

}  // namespace growth
