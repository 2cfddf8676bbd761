#include "growth/limit_lab.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace growth {

Word WordTemplate::instantiate(const GroupModel& target, std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("template index n must be >= 1");
  Word raw;
  for (const auto& b : blocks) {
    std::int64_t e = b.times_n ? b.coefficient * n : b.coefficient;
    bool pos = b.pos;
    if (e < 0) {
      pos = !pos;
      e = -e;
    }
    for (std::int64_t i = 0; i < e; ++i) raw.push_back(make_letter(b.gen, pos));
  }
  return target.normalize(raw);
}

WordTemplate parse_template(const GroupModel& target, const std::string& text) {
  WordTemplate tmpl;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '1' && i + 1 == text.size()) return tmpl;
  while (i < text.size()) {
    char c = text[i];
    if (!std::isalpha(static_cast<unsigned char>(c)) || c == 'n' || c == 'N')
      throw std::invalid_argument("bad template syntax at '" + text.substr(i) +
                                  "' in '" + text + "'");
    TemplateBlock block;
    block.pos = std::islower(static_cast<unsigned char>(c)) != 0;
    block.gen = target.gen_from_char(c);
    ++i;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      std::int64_t coef = 0;
      bool have_digits = false;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coef = coef * 10 + (text[i++] - '0');
        have_digits = true;
      }
      if (i < text.size() && (text[i] == 'n' || text[i] == 'N')) {
        block.times_n = true;
        ++i;
        block.coefficient = have_digits ? coef : 1;
      } else if (have_digits) {
        block.coefficient = coef;
      } else {
        throw std::invalid_argument("bad exponent in template '" + text + "'");
      }
      if (neg) block.coefficient = -block.coefficient;
    }
    tmpl.blocks.push_back(block);
    skip_ws();
  }
  return tmpl;
}

Homomorphism HomomorphismSequence::at(std::int64_t n) const {
  if (!source || !target) throw std::invalid_argument("sequence endpoints unset");
  if (static_cast<int>(templates.size()) != source->alphabet())
    throw std::invalid_argument("sequence needs one template per source generator");
  Homomorphism h;
  h.source = source;
  h.target = target;
  for (const auto& t : templates) h.images.push_back(t.instantiate(*target, n));
  return h;
}

HomomorphismSequence make_sequence(const GroupModel& source, const GroupModel& target,
                                   const std::vector<std::string>& rules,
                                   bool surjective_assumed) {
  if (static_cast<int>(rules.size()) != source.alphabet())
    throw std::invalid_argument("need exactly one rule per source generator, got " +
                                std::to_string(rules.size()));
  HomomorphismSequence seq;
  seq.source = &source;
  seq.target = &target;
  seq.surjective_assumed = surjective_assumed;
  for (const auto& r : rules) seq.templates.push_back(parse_template(target, r));
  return seq;
}

std::vector<std::int64_t> geometric_sample(std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n < horizon; n *= 2) out.push_back(n);
  out.push_back(horizon);
  return out;
}

std::string to_string(WordFate fate) {
  switch (fate) {
    case WordFate::EventuallyTrivial: return "eventually-trivial";
    case WordFate::EventuallyNontrivial: return "eventually-nontrivial";
    default: return "undecided";
  }
}

namespace {

// Reduced words of the free source group, lengths 1..cap, shortlex order.
std::vector<Word> reduced_words(const GroupModel& source, int cap) {
  std::vector<Word> out;
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= cap; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int g = 0; g < source.alphabet(); ++g) {
        for (bool pos : {true, false}) {
          Letter l = make_letter(g, pos);
          if (!w.empty() && w.back() == inv(l)) continue;
          Word ext = w;
          ext.push_back(l);
          next.push_back(std::move(ext));
        }
      }
    }
    std::sort(next.begin(), next.end(), shortlex_less);
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

StableKernelReport stable_kernel_scan(const HomomorphismSequence& seq, int length_cap,
                                      std::int64_t horizon) {
  if (length_cap < 1) throw std::invalid_argument("length cap must be >= 1");
  StableKernelReport rep;
  rep.length_cap = length_cap;
  rep.horizon = horizon;
  rep.sampled = geometric_sample(horizon);

  std::vector<Homomorphism> maps;
  for (auto n : rep.sampled) maps.push_back(seq.at(n));

  for (const auto& w : reduced_words(*seq.source, length_cap)) {
    WordClassification cls;
    cls.word = w;
    bool prev_dead = false;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      bool dead = seq.target->is_identity(maps[i].evaluate(w));
      if (i > 0 && dead != prev_dead) {
        ++cls.flips;
        cls.last_flip_n = rep.sampled[i];
      }
      prev_dead = dead;
    }
    if (cls.flips > 0)
      cls.fate = WordFate::Undecided;
    else
      cls.fate = prev_dead ? WordFate::EventuallyTrivial : WordFate::EventuallyNontrivial;
    rep.words.push_back(std::move(cls));
  }
  return rep;
}

FactoringReport factoring_check(const HomomorphismSequence& seq,
                                const std::vector<Word>& relations,
                                std::int64_t horizon) {
  FactoringReport rep;
  rep.relations = relations;
  rep.sampled = geometric_sample(horizon);

  std::vector<bool> all_dead;
  for (auto n : rep.sampled) {
    Homomorphism f = seq.at(n);
    bool dead = true;
    for (const auto& r : relations)
      if (!seq.target->is_identity(f.evaluate(r))) {
        dead = false;
        break;
      }
    all_dead.push_back(dead);
  }
  for (std::size_t i = 0; i < rep.sampled.size(); ++i) {
    bool tail = true;
    for (std::size_t j = i; j < all_dead.size(); ++j) tail = tail && all_dead[j];
    if (tail) {
      rep.n0 = rep.sampled[i];
      break;
    }
  }
  return rep;
}

ContinuityReport growth_continuity_probe(const HomomorphismSequence& seq,
                                         const std::vector<Word>& S,
                                         const GroupModel* limit_model,
                                         const std::vector<Word>& eta_S,
                                         std::int64_t horizon, int depth) {
  if (!limit_model || eta_S.empty())
    throw std::invalid_argument("continuity probe needs the limit model and eta(S)");
  if (depth < 2) throw std::invalid_argument("continuity probe needs depth >= 2");

  ContinuityReport rep;
  rep.depth = depth;
  BallLevels limit_levels = enumerate_levels(*limit_model, eta_S, depth);
  rep.limit_balls = limit_levels.ball_sizes();
  rep.limit_estimate = growth_estimate(limit_levels);

  for (auto n : geometric_sample(horizon)) {
    Homomorphism f = seq.at(n);
    std::vector<Word> image;
    for (const auto& s : S) image.push_back(f.evaluate(s));
    image = canonical_set(*seq.target, image);
    if (image.empty())
      throw std::invalid_argument("f_n(S) is trivial at n = " + std::to_string(n));

    ContinuityRow row;
    row.n = n;
    BallLevels levels = enumerate_levels(*seq.target, image, depth);
    row.balls = levels.ball_sizes();
    row.estimate = growth_estimate(levels);
    row.inequality_ok = true;
    for (std::size_t k = 0; k < row.balls.size() && k < rep.limit_balls.size(); ++k) {
      if (row.balls[k] > rep.limit_balls[k]) {
        row.inequality_ok = false;
        throw std::logic_error("surjection inequality fails at n = " + std::to_string(n) +
                               ", k = " + std::to_string(k) + ": " +
                               std::to_string(row.balls[k]) + " > " +
                               std::to_string(rep.limit_balls[k]));
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace growth
