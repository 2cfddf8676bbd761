#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "growth/word.hpp"

namespace growth {

// Vertex of the simplicial tree a model acts on. `site` identifies the vertex
// family: 0 for Cayley-tree vertices, a factor index for coset vertices of
// amalgam trees, -1 for the element vertices of star trees. `at` is the
// canonical representative (element, or coset representative).
struct SpacePoint {
  int site = 0;
  Word at;
  bool operator==(const SpacePoint& o) const { return site == o.site && at == o.at; }
  bool operator!=(const SpacePoint& o) const { return !(*this == o); }
};

std::string encode(const SpacePoint& p);

// A finitely generated group with decidable canonical forms together with its
// isometric action on a simplicial tree (edge metric, integer distances).
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual std::string kind() const = 0;
  virtual std::map<std::string, std::int64_t> params() const = 0;
  virtual int alphabet() const = 0;
  virtual char letter_char(int gen) const = 0;
  int gen_from_char(char c) const;

  // Canonical form of an arbitrary spelling. Identity is the empty word.
  virtual Word normalize(const Word& raw) const = 0;
  virtual Word multiply(const Word& a, const Word& b) const;
  Word invert(const Word& a) const;
  Word power(const Word& a, std::int64_t e) const;
  bool is_identity(const Word& w) const { return w.empty(); }
  bool commute(const Word& a, const Word& b) const;

  // Tree action.
  virtual SpacePoint base() const = 0;
  virtual SpacePoint act(const Word& g, const SpacePoint& p) const = 0;
  virtual std::int64_t dist(const SpacePoint& x, const SpacePoint& y) const = 0;
  // Vertex at distance t from x on the geodesic [x, y]; requires 0 <= t <= d(x,y).
  virtual SpacePoint point_on_segment(const SpacePoint& x, const SpacePoint& y,
                                      std::int64_t t) const = 0;

  // Order bound for the pointwise stabilizer of any bi-infinite line. All
  // bundled models act with trivial edge stabilizers, hence 1.
  virtual std::int64_t pointwise_line_stabilizer_order() const { return 1; }

  std::string format(const Word& w) const;
  Word parse(const std::string& text) const;
  std::string label(const SpacePoint& p) const;
};

// Free group of the given rank acting on its Cayley tree. Letters a, b, c, ...
class FreeGroupModel final : public GroupModel {
 public:
  explicit FreeGroupModel(int rank);
  std::string kind() const override { return "free_group"; }
  std::map<std::string, std::int64_t> params() const override;
  int alphabet() const override { return rank_; }
  char letter_char(int gen) const override;
  Word normalize(const Word& raw) const override;
  Word multiply(const Word& a, const Word& b) const override;
  SpacePoint base() const override { return SpacePoint{0, {}}; }
  SpacePoint act(const Word& g, const SpacePoint& p) const override;
  std::int64_t dist(const SpacePoint& x, const SpacePoint& y) const override;
  SpacePoint point_on_segment(const SpacePoint& x, const SpacePoint& y,
                              std::int64_t t) const override;

 private:
  int rank_;
};

// Free product of cyclic factors (order 0 means an infinite cyclic factor),
// one generator per factor: s, t, u, ... Two factors act on the coset tree
// with vertex set G/G_0 and G/G_1; three or more factors act on the star tree
// with an extra family of element vertices.
class FreeProductModel final : public GroupModel {
 public:
  explicit FreeProductModel(std::vector<int> orders);
  std::string kind() const override { return "free_product"; }
  std::map<std::string, std::int64_t> params() const override;
  int alphabet() const override { return static_cast<int>(orders_.size()); }
  char letter_char(int gen) const override;
  Word normalize(const Word& raw) const override;
  SpacePoint base() const override { return SpacePoint{0, {}}; }
  SpacePoint act(const Word& g, const SpacePoint& p) const override;
  std::int64_t dist(const SpacePoint& x, const SpacePoint& y) const override;
  SpacePoint point_on_segment(const SpacePoint& x, const SpacePoint& y,
                              std::int64_t t) const override;
  int order(int gen) const { return orders_[gen]; }

 private:
  int factor_of(Letter l) const { return gen_of(l); }
  Word coset_rep(const Word& w, int site) const;
  std::vector<int> orders_;
};

// Baumslag-Solitar group BS(p,q) = <a,t | t a^p t^-1 = a^q> in free product
// with a free group of rank `extra`, acting on the coset tree of the free
// product splitting. Letters: a, t, then z, y, x, ... for the free factor.
class BaumslagSolitarFreeProductModel final : public GroupModel {
 public:
  BaumslagSolitarFreeProductModel(int p, int q, int extra);
  std::string kind() const override { return "bs_free_product"; }
  std::map<std::string, std::int64_t> params() const override;
  int alphabet() const override { return 2 + extra_; }
  char letter_char(int gen) const override;
  Word normalize(const Word& raw) const override;
  SpacePoint base() const override { return SpacePoint{0, {}}; }
  SpacePoint act(const Word& g, const SpacePoint& p) const override;
  std::int64_t dist(const SpacePoint& x, const SpacePoint& y) const override;
  SpacePoint point_on_segment(const SpacePoint& x, const SpacePoint& y,
                              std::int64_t t) const override;

 private:
  // Factor 0 is the BS subgroup (letters a, t), factor 1 the free factor.
  int factor_of(Letter l) const { return gen_of(l) <= 1 ? 0 : 1; }
  Word coset_rep(const Word& w, int site) const;
  Word bs_canonical(const Word& part) const;
  int p_, q_, extra_;
};

std::unique_ptr<GroupModel> make_model(const std::string& name);

// Generating set utilities: canonical sets are sorted shortlex, identity-free.
std::vector<Word> canonical_set(const GroupModel& m, std::vector<Word> words);
std::vector<Word> parse_set(const GroupModel& m, const std::vector<std::string>& words);
std::vector<Word> symmetrize(const GroupModel& m, const std::vector<Word>& set);
// Ball of radius p in the symmetrized set (p = 0 gives {identity}).
std::vector<Word> power_set(const GroupModel& m, const std::vector<Word>& set,
                            int p, std::size_t cap = 10'000'000);

struct Homomorphism {
  const GroupModel* source = nullptr;
  const GroupModel* target = nullptr;
  std::vector<Word> images;  // one per source generator
  Word evaluate(const Word& w) const;
};

}  // namespace growth
