#include "growth/growth_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace growth {

std::vector<std::int64_t> BallLevels::ball_sizes() const {
  std::vector<std::int64_t> out;
  std::int64_t total = 0;
  for (auto s : sizes) {
    total += s;
    out.push_back(total);
  }
  return out;
}

std::vector<std::int64_t> BallLevels::sphere_sizes() const { return sizes; }

BallLevels enumerate_levels(const GroupModel& m, const std::vector<Word>& gens,
                            int depth, std::size_t cap, int shards,
                            bool keep_spheres) {
  if (depth < 0) throw std::invalid_argument("ball depth must be nonnegative");
  if (shards < 1) throw std::invalid_argument("shard count must be positive");
  std::vector<Word> sym = symmetrize(m, gens);
  if (sym.empty()) throw std::invalid_argument("generating set is trivial");

  BallLevels out;
  out.sizes.push_back(1);
  if (keep_spheres) out.spheres.push_back({Word{}});
  // A generator step changes the distance to the identity by at most one, so
  // membership checks only ever touch the previous and current sphere.
  std::unordered_set<std::string> prev, cur{encode(Word{})};
  std::vector<Word> frontier{Word{}};
  std::size_t total = 1;

  for (int level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<std::vector<Word>> born(static_cast<std::size_t>(shards));
    for (const auto& w : frontier) {
      std::size_t shard =
          shards == 1 ? 0 : static_cast<std::size_t>(hash128(w).lo % shards);
      for (const auto& s : sym) born[shard].push_back(m.multiply(w, s));
    }
    std::vector<Word> next;
    for (auto& bucket : born) {
      std::sort(bucket.begin(), bucket.end(), shortlex_less);
      bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
      next.insert(next.end(), std::make_move_iterator(bucket.begin()),
                  std::make_move_iterator(bucket.end()));
    }
    std::sort(next.begin(), next.end(), shortlex_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());

    std::vector<Word> sphere;
    std::unordered_set<std::string> nextset;
    for (auto& w : next) {
      std::string key = encode(w);
      if (prev.count(key) || cur.count(key)) continue;
      nextset.insert(std::move(key));
      sphere.push_back(std::move(w));
    }
    total += sphere.size();
    if (total > cap) {
      out.truncated = true;
      break;
    }
    out.sizes.push_back(static_cast<std::int64_t>(sphere.size()));
    frontier = sphere;
    if (keep_spheres) out.spheres.push_back(std::move(sphere));
    prev = std::move(cur);
    cur = std::move(nextset);
  }
  return out;
}

GrowthEstimate growth_estimate(const BallLevels& levels) {
  if (levels.sizes.size() < 3) throw std::invalid_argument("growth estimate needs depth >= 2");
  std::vector<std::int64_t> beta = levels.ball_sizes();
  GrowthEstimate est;
  est.depth = static_cast<int>(beta.size()) - 1;
  est.certified_upper = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < beta.size(); ++k) {
    double v = std::pow(static_cast<double>(beta[k]), 1.0 / static_cast<double>(k));
    if (v < est.certified_upper) {
      est.certified_upper = v;
      est.upper_beta = beta[k];
      est.upper_depth = static_cast<int>(k);
    }
  }
  // Deepest sphere ratio, taken as a geometric mean over the last two radii:
  // consecutive ratios oscillate with period two whenever geodesics alternate
  // generator types, and the mean cancels that parity artifact.
  std::int64_t last = levels.sizes.back();
  std::int64_t prev2 = levels.sizes[levels.sizes.size() - 3];
  if (last == 0) {
    est.point_estimate = 1.0;
    est.e_one = true;
  } else {
    est.point_estimate = std::sqrt(static_cast<double>(last) / static_cast<double>(prev2));
    if (est.point_estimate <= 1.0 + 1e-9) est.e_one = true;
  }
  return est;
}

double certified_lower_bound(const GroupModel& m, const std::vector<Word>& gens,
                             const std::vector<Word>& basis, int p,
                             bool certificate_passed, const std::string& certificate_id,
                             GrowthEstimate* attach_to) {
  if (basis.empty()) throw std::invalid_argument("lower bound needs a non-empty basis");
  if (p < 1) throw std::invalid_argument("basis power must be positive");
  if (!certificate_passed || certificate_id.empty())
    throw std::invalid_argument("freeness certificate missing or failed");
  std::vector<Word> canon;
  for (const auto& w : basis) {
    Word c = m.normalize(w);
    if (m.is_identity(c)) throw std::invalid_argument("basis contains the identity");
    canon.push_back(std::move(c));
  }
  std::sort(canon.begin(), canon.end(), shortlex_less);
  if (std::adjacent_find(canon.begin(), canon.end()) != canon.end())
    throw std::invalid_argument("basis contains a repeated element");
  try {
    std::vector<Word> pool = power_set(m, gens, p, 200'000);
    std::unordered_set<std::string> avail;
    for (const auto& w : pool) avail.insert(encode(w));
    for (const auto& w : canon)
      if (!avail.count(encode(w)))
        throw std::invalid_argument("basis element escapes the stated power of S");
  } catch (const std::length_error&) {
    // S^p is too large to enumerate; containment is certified upstream.
  }
  double lower =
      std::pow(static_cast<double>(canon.size()), 1.0 / static_cast<double>(p));
  if (attach_to != nullptr) {
    if (lower > attach_to->point_estimate + 1e-9 ||
        lower > attach_to->certified_upper + 1e-9)
      throw std::logic_error("certified lower bound exceeds the estimate bracket");
    attach_to->certified_lower = lower;
    attach_to->lower_certificate = certificate_id;
  }
  return lower;
}

std::vector<std::int64_t> ConeAutomaton::sphere_counts(int depth) const {
  std::size_t n = matrix.size();
  std::vector<std::int64_t> vec(n, 0);
  vec[static_cast<std::size_t>(initial)] = 1;
  std::vector<std::int64_t> out{1};
  for (int k = 1; k <= depth; ++k) {
    std::vector<std::int64_t> nxt(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (vec[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) nxt[j] += vec[i] * matrix[i][j];
    }
    vec = std::move(nxt);
    std::int64_t total = 0;
    for (auto v : vec) total += v;
    out.push_back(total);
  }
  return out;
}

ConeAutomaton build_cone_automaton(const GroupModel& m, const std::vector<Word>& gens,
                                   int build_depth, int probe_depth, std::size_t cap) {
  if (build_depth < 1 || probe_depth < 1)
    throw std::invalid_argument("automaton depths must be positive");
  std::vector<Word> sym = symmetrize(m, gens);
  BallLevels levels = enumerate_levels(m, gens, build_depth + probe_depth, cap);
  std::unordered_map<std::string, int> length;
  for (std::size_t k = 0; k < levels.spheres.size(); ++k)
    for (const auto& w : levels.spheres[k]) length[encode(w)] = static_cast<int>(k);

  std::vector<std::pair<Word, int>> probes;  // probe element and its length
  for (std::size_t k = 1;
       k <= static_cast<std::size_t>(probe_depth) && k < levels.spheres.size(); ++k)
    for (const auto& w : levels.spheres[k]) probes.emplace_back(w, static_cast<int>(k));

  auto signature = [&](const Word& w, int wlen) {
    std::string sig;
    sig.reserve(probes.size());
    for (const auto& [v, vlen] : probes) {
      auto it = length.find(encode(m.multiply(w, v)));
      bool geodesic = it != length.end() && it->second == wlen + vlen;
      sig.push_back(geodesic ? '1' : '0');
    }
    return sig;
  };

  std::unordered_map<std::string, int> state_of;
  std::vector<std::vector<std::int64_t>> matrix;
  auto state_id = [&](const std::string& sig) {
    auto it = state_of.find(sig);
    if (it != state_of.end()) return it->second;
    int id = static_cast<int>(state_of.size());
    state_of.emplace(sig, id);
    matrix.emplace_back();
    return id;
  };

  ConeAutomaton aut;
  aut.initial = state_id(signature(Word{}, 0));
  std::unordered_set<int> expanded;
  int last_new_radius = 0;
  for (int k = 0; k < build_depth; ++k) {
    for (const auto& w : levels.spheres[static_cast<std::size_t>(k)]) {
      int from = state_id(signature(w, k));
      if (!expanded.insert(from).second) continue;
      std::vector<std::int64_t> row;
      for (const auto& s : sym) {
        Word ws = m.multiply(w, s);
        auto it = length.find(encode(ws));
        if (it == length.end() || it->second != k + 1) continue;
        std::size_t known = state_of.size();
        int to = state_id(signature(ws, k + 1));
        if (state_of.size() > known) last_new_radius = k + 1;
        if (static_cast<std::size_t>(to) >= row.size()) row.resize(to + 1, 0);
        ++row[static_cast<std::size_t>(to)];
      }
      matrix[static_cast<std::size_t>(from)] = std::move(row);
    }
  }
  if (expanded.size() != state_of.size())
    throw std::runtime_error(
        "cone types still appearing at radius " + std::to_string(last_new_radius) +
        "; rebuild with a deeper cutoff");
  std::size_t n = state_of.size();
  for (auto& row : matrix) row.resize(n, 0);
  aut.matrix = std::move(matrix);
  aut.stabilization_radius = last_new_radius;
  return aut;
}

bool validate_cone_automaton(const ConeAutomaton& aut, const GroupModel& m,
                             const std::vector<Word>& gens, int depth,
                             std::size_t cap) {
  BallLevels levels = enumerate_levels(m, gens, depth, cap, 1, false);
  std::vector<std::int64_t> bfs = levels.sphere_sizes();
  std::vector<std::int64_t> counted = aut.sphere_counts(depth);
  // A dead frontier truncates the BFS list; the automaton must then report
  // zeros beyond it.
  for (std::size_t k = 0; k < counted.size(); ++k) {
    std::int64_t expect = k < bfs.size() ? bfs[k] : 0;
    if (counted[k] != expect) return false;
  }
  return true;
}

double spectral_radius(const std::vector<std::vector<std::int64_t>>& matrix) {
  std::size_t n = matrix.size();
  if (n == 0) return 0.0;
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<double>(matrix[i][j]);
  double log_rho = 0.0;
  double weight = 1.0;
  std::vector<double> b(n * n, 0.0);
  for (int iter = 0; iter < 48; ++iter) {
    std::fill(b.begin(), b.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        double aik = a[i * n + k];
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) b[i * n + j] += aik * a[k * n + j];
      }
    double norm = 0.0;
    for (double v : b) norm = std::max(norm, std::abs(v));
    weight *= 0.5;
    if (norm == 0.0) return 0.0;
    log_rho += weight * std::log(norm);
    for (auto& v : b) v /= norm;
    a.swap(b);
  }
  return std::exp(log_rho);
}

}  // namespace growth
