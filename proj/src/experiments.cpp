#include "growth/experiments.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace growth {

namespace {

std::string set_key(const GroupModel& m, const std::vector<Word>& set) {
  std::string out;
  for (const auto& w : set) {
    if (!out.empty()) out.push_back('|');
    out += m.format(w);
  }
  return out;
}

std::vector<Word> standard_generators(const GroupModel& m) {
  std::vector<Word> out;
  for (int g = 0; g < m.alphabet(); ++g) out.push_back(Word{make_letter(g, true)});
  return out;
}

}  // namespace

std::vector<std::vector<Word>> enumerate_generating_sets(const GroupModel& m,
                                                         int max_cardinality,
                                                         int max_length) {
  if (max_cardinality < 1 || max_length < 1)
    throw std::invalid_argument("enumeration bounds must be positive");
  std::vector<Word> pool;
  for (const auto& w : power_set(m, standard_generators(m), max_length))
    if (!m.is_identity(w)) pool.push_back(w);

  std::vector<std::vector<Word>> out;
  std::unordered_set<std::string> seen;
  std::vector<std::size_t> idx;
  auto emit = [&] {
    std::vector<Word> set;
    for (auto i : idx) set.push_back(pool[i]);
    set = canonical_set(m, std::move(set));
    if (static_cast<int>(set.size()) == static_cast<int>(idx.size()) &&
        seen.insert(set_key(m, set)).second)
      out.push_back(std::move(set));
  };
  // Subsets in lexicographic index order, small cardinalities first.
  for (int card = 1; card <= max_cardinality; ++card) {
    idx.assign(static_cast<std::size_t>(card), 0);
    for (int i = 0; i < card; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    if (static_cast<std::size_t>(card) > pool.size()) break;
    while (true) {
      emit();
      int pos = card - 1;
      while (pos >= 0 &&
             idx[static_cast<std::size_t>(pos)] == pool.size() - static_cast<std::size_t>(card - pos))
        --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < card; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

bool generates_whole_group(const GroupModel& m, const std::vector<Word>& set,
                           int depth) {
  if (set.empty()) return false;
  std::unordered_set<std::string> ball;
  for (const auto& w : power_set(m, set, depth)) ball.insert(encode(w));
  for (const auto& g : standard_generators(m))
    if (!ball.count(encode(m.normalize(g)))) return false;
  return true;
}

std::vector<Word> nielsen_reduce(const GroupModel& m, std::vector<Word> set) {
  auto fold = [&](std::vector<Word> s) {
    for (auto& w : s) {
      Word iw = m.invert(w);
      if (shortlex_less(iw, w)) w = std::move(iw);
    }
    return canonical_set(m, std::move(s));
  };
  set = fold(std::move(set));
  // Pair moves identify tuples up to automorphism only when the tuple is a
  // basis of the subgroup it generates; the one cheap certificate is a
  // non-commuting pair in a free group (such a pair is always free of rank
  // two).  Everything else folds and sorts only, and rows with equal ball
  // columns are merged after the scan instead.
  if (m.kind() != "free_group" || set.size() != 2 || m.commute(set[0], set[1]))
    return set;
  for (int pass = 0; pass < 64; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < set.size() && !improved; ++i) {
      for (std::size_t j = 0; j < set.size() && !improved; ++j) {
        if (i == j) continue;
        const Word candidates[4] = {
            m.multiply(set[i], set[j]), m.multiply(set[i], m.invert(set[j])),
            m.multiply(set[j], set[i]), m.multiply(m.invert(set[j]), set[i])};
        for (const auto& cand : candidates) {
          if (cand.empty() || cand.size() >= set[i].size()) continue;
          // Cardinality-preserving moves only: collapsing two entries would
          // change the ball column and break dedup soundness.
          bool clash = false;
          Word folded = cand;
          Word folded_inv = m.invert(cand);
          if (shortlex_less(folded_inv, folded)) folded = folded_inv;
          for (std::size_t k2 = 0; k2 < set.size(); ++k2)
            if (k2 != i && set[k2] == folded) clash = true;
          if (clash) continue;
          std::vector<Word> next = set;
          next[i] = folded;
          next = fold(std::move(next));
          set = std::move(next);
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }
  return set;
}

namespace {

SpectrumTable scan(const GroupModel& m, const ScanBounds& b, bool require_generation,
                   bool drop_e_one, bool require_hyperbolic, const ActionConstants* c) {
  if (b.depth < 2) throw std::invalid_argument("scan depth must be >= 2");
  if (b.shards < 1) throw std::invalid_argument("shard count must be positive");
  SpectrumTable table;
  table.model = m.kind();
  table.bounds = b;

  std::vector<std::vector<Word>> candidates =
      enumerate_generating_sets(m, b.max_cardinality, b.max_length);
  table.candidates = static_cast<std::int64_t>(candidates.size());
  if (candidates.size() > b.cap) {
    candidates.resize(b.cap);
    table.partial = true;
  }

  // Shards partition the candidate list by index; rows are reassembled in
  // candidate order, so the shard count cannot change the table.
  std::vector<std::pair<std::size_t, SpectrumRow>> built;
  for (int shard = 0; shard < b.shards; ++shard) {
    for (std::size_t i = static_cast<std::size_t>(shard); i < candidates.size();
         i += static_cast<std::size_t>(b.shards)) {
      const auto& set = candidates[i];
      if (require_generation && !generates_whole_group(m, set, b.generation_depth)) {
        ++table.excluded_generation;
        continue;
      }
      if (require_hyperbolic && !try_find_hyperbolic_in_power(m, set, *c)) {
        ++table.dropped_elliptic;
        continue;
      }
      BallLevels levels = enumerate_levels(m, set, b.depth);
      SpectrumRow row;
      row.set = set;
      row.balls = levels.ball_sizes();
      row.estimate = growth_estimate(levels);
      if (drop_e_one && row.estimate.e_one) {
        ++table.dropped_e_one;
        continue;
      }
      row.dedup_class = set_key(m, nielsen_reduce(m, set));
      built.emplace_back(i, std::move(row));
    }
  }
  std::sort(built.begin(), built.end(),
            [](const auto& a, const auto& b2) { return a.first < b2.first; });

  // Nielsen-class dedup; identified sets must agree on the whole ball column.
  std::map<std::string, std::size_t> class_of;
  for (auto& [i, row] : built) {
    auto [it, fresh] = class_of.try_emplace(row.dedup_class, table.rows.size());
    if (fresh) {
      table.rows.push_back(std::move(row));
      continue;
    }
    if (table.rows[it->second].balls != row.balls)
      throw std::logic_error("Nielsen-identified sets disagree on ball sizes: " +
                             set_key(m, table.rows[it->second].set) + " vs " +
                             set_key(m, row.set));
  }

  std::sort(table.rows.begin(), table.rows.end(),
            [&](const SpectrumRow& a, const SpectrumRow& b2) {
              if (a.estimate.point_estimate != b2.estimate.point_estimate)
                return a.estimate.point_estimate < b2.estimate.point_estimate;
              return set_key(m, a.set) < set_key(m, b2.set);
            });

  // Post-hoc merge of classes the bounded canonicalization missed: identical
  // ball columns mean identical rows for the table's purposes.
  std::vector<SpectrumRow> merged;
  for (auto& row : table.rows) {
    if (!merged.empty() && merged.back().balls == row.balls) {
      merged.back().merged_duplicate = true;
      ++merged.back().absorbed;
      continue;
    }
    merged.push_back(std::move(row));
  }
  table.rows = std::move(merged);
  if (!table.rows.empty()) table.rows.front().minimum = true;
  return table;
}

}  // namespace

SpectrumTable xi_scan(const GroupModel& m, const ScanBounds& b) {
  return scan(m, b, true, false, false, nullptr);
}

SpectrumTable theta_scan(const GroupModel& m, const ScanBounds& b,
                         bool require_hyperbolic, const ActionConstants& c) {
  c.validate();
  return scan(m, b, false, true, require_hyperbolic, &c);
}

GrowthTightReport growth_tight_experiment(int depth_S, int depth_fS) {
  if (depth_S < 2 || depth_fS < 2)
    throw std::invalid_argument("comparison depths must be >= 2");
  auto m = make_model("bs23z");
  auto S = parse_set(*m, {"a", "t", "z"});
  auto fS = parse_set(*m, {"a^2", "t", "z"});

  GrowthTightReport rep;
  rep.depth_S = depth_S;
  rep.depth_fS = depth_fS;
  BallLevels ls = enumerate_levels(*m, S, depth_S);
  BallLevels lf = enumerate_levels(*m, fS, depth_fS);
  rep.balls_S = ls.ball_sizes();
  rep.balls_fS = lf.ball_sizes();
  rep.est_S = growth_estimate(ls);
  rep.est_fS = growth_estimate(lf);

  for (std::size_t k = 0; k < rep.balls_fS.size() && k < rep.balls_S.size(); ++k)
    if (rep.balls_fS[k] < rep.balls_S[k]) {
      rep.first_strict_k = static_cast<int>(k);
      break;
    }
  rep.trivial_bound_ok = true;
  for (std::size_t k = 0; k < rep.balls_fS.size() && 2 * k < rep.balls_S.size(); ++k)
    if (rep.balls_fS[k] > rep.balls_S[2 * k]) rep.trivial_bound_ok = false;
  return rep;
}

PipelineAudit full_pipeline_audit(const GroupModel& m, const std::vector<Word>& S,
                                  const ActionConstants& c) {
  c.validate();
  PipelineAudit audit;
  std::vector<Word> Sc = canonical_set(m, S);

  auto run = [&](const std::string& name, auto&& body) {
    if (!audit.failed_stage.empty()) return;
    AuditStage stage;
    stage.name = name;
    try {
      stage.detail = body();
      stage.passed = true;
    } catch (const std::exception& e) {
      stage.detail = e.what();
      audit.failed_stage = name;
    }
    audit.stages.push_back(std::move(stage));
  };

  DisplacementWitness witness;
  FreePairCertificate pair;
  PrimitiveElement prim;
  SeparatorSet seps;

  run("hyperbolic-scan", [&] {
    Word g = find_hyperbolic_in_power(m, Sc, c);
    return "g = " + m.format(g);
  });
  run("joint-displacement", [&] {
    int MD = static_cast<int>(c.M * c.D);
    std::vector<Word> powered = canonical_set(m, power_set(m, Sc, MD));
    witness = large_displacement_element(m, powered, c);
    witness.power *= MD;
    return "g = " + m.format(witness.g) + ", L(S^" + std::to_string(MD) +
           ") = " + std::to_string(witness.L_S) +
           ", lambda = " + std::to_string(witness.L_g);
  });
  run("non-elementarity", [&] {
    pair = build_free_pair(m, Sc, witness, c, 4);
    if (!pair.passed) throw std::runtime_error(pair.failure);
    return "s = " + m.format(pair.s) + ", depth 4 exhaustive";
  });
  run("primitive-element", [&] {
    prim = build_primitive_u(m, Sc, pair, c);
    if (!prim.passed) throw std::runtime_error(prim.failure);
    return std::to_string(prim.u.size()) + " letters, lambda = " +
           std::to_string(prim.ax.lambda);
  });
  run("separators", [&] {
    seps = build_separators(m, Sc, c);
    return "delta_n = " + std::to_string(seps.context.delta_n) + ", d(y, u1 y) = " +
           std::to_string(seps.d_y[0]);
  });
  run("phi-injectivity", [&] {
    audit.phi = phi_injectivity_check(m, Sc, seps, c, 2, 1);
    return std::to_string(audit.phi.tuples) + " tuples, hausdorff " +
           std::to_string(audit.phi.hausdorff_max) + " <= " +
           std::to_string(audit.phi.hausdorff_bound);
  });
  run("lower-bound", [&] {
    audit.lower = lower_bound_audit(m, Sc, c, 4);
    if (!audit.lower.passed) throw std::runtime_error(audit.lower.failure);
    return audit.lower.certificate_id;
  });

  audit.passed = audit.failed_stage.empty();
  return audit;
}

}  // namespace growth
