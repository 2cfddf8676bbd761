// Command-line front end. One subcommand per library operation; every run
// emits a schema-versioned JSON record (one object per line), table commands
// also emit CSV, and the spectrum scans can plot a static SVG. Exit codes:
// 0 every asserted inequality held, 1 usage or IO error, 2 a verified
// inequality or certificate failed.
//
// With --out BASE the record goes to BASE.jsonl, tables to BASE.csv and the
// plot to BASE.svg; without it, table commands print the CSV and the rest
// print the record line. Wall time lives in its own record field so that
// byte comparisons across shard counts can drop it and nothing else.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "growth/constructions.hpp"
#include "growth/experiments.hpp"
#include "growth/group.hpp"
#include "growth/growth_engine.hpp"
#include "growth/limit_lab.hpp"
#include "growth/space.hpp"
#include "growth/word.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace growth;

constexpr const char* kSchemaVersion = "1.0.0";

struct RunConfig {
  std::string model = "f2";
  std::string gens;  // comma-separated words; empty means the standard set
  std::optional<int> depth;
  std::int64_t cap = 10'000'000;
  std::int64_t D = 1;
  std::int64_t M = 2;
  int shards = 1;
  std::uint64_t seed = 1;
  std::string out;
  bool plot = false;

  int q = 1;
  int max_cardinality = 2;
  int max_length = 2;
  bool require_hyperbolic = false;
  std::string target;
  std::string limit;
  std::string rules;
  std::string relations;
  std::string eta;
  std::int64_t horizon = 16;
  int length_cap = 2;
  std::string config_path;
};

ActionConstants constants_of(const RunConfig& cfg) {
  ActionConstants c;
  c.delta = 0;
  c.D = cfg.D;
  c.M = cfg.M;
  c.validate();
  return c;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    out.push_back(text.substr(pos, end - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Comma-separated words; parse failures carry the 1-based byte position of
// the offending token inside the argument.
std::vector<Word> parse_words_annotated(const GroupModel& m, const std::string& text,
                                        const char* flag) {
  std::vector<Word> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::string tok = trim(text.substr(pos, end - pos));
    if (tok.empty())
      throw std::invalid_argument(std::string(flag) + ": empty word at position " +
                                  std::to_string(pos + 1));
    try {
      out.push_back(m.parse(tok));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(flag) + ": parse error at position " +
                                  std::to_string(pos + 1) + " ('" + tok +
                                  "'): " + e.what());
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct ModelSet {
  std::unique_ptr<GroupModel> m;
  std::vector<Word> S;
};

ModelSet load_model_set(const RunConfig& cfg) {
  ModelSet ms;
  ms.m = make_model(cfg.model);
  if (cfg.gens.empty()) {
    for (int g = 0; g < ms.m->alphabet(); ++g)
      ms.S.push_back(Word{make_letter(g, true)});
  } else {
    ms.S = canonical_set(*ms.m, parse_words_annotated(*ms.m, cfg.gens, "--gens"));
    if (ms.S.empty())
      throw std::invalid_argument("--gens: empty generating set after dropping the identity");
  }
  return ms;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> formatted(const GroupModel& m, const std::vector<Word>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(m.format(w));
  return out;
}

std::string fmt_double(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

json config_json(const RunConfig& cfg, const std::string& gens_echo, int depth_echo) {
  json j;
  j["model"] = cfg.model;
  j["gens"] = gens_echo;
  j["depth"] = depth_echo;
  j["cap"] = cfg.cap;
  j["constants_D"] = cfg.D;
  j["constants_M"] = cfg.M;
  j["shards"] = cfg.shards;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["plot"] = cfg.plot;
  j["q"] = cfg.q;
  j["max_cardinality"] = cfg.max_cardinality;
  j["max_length"] = cfg.max_length;
  j["require_hyperbolic"] = cfg.require_hyperbolic;
  j["target"] = cfg.target;
  j["limit"] = cfg.limit;
  j["rules"] = cfg.rules;
  j["relations"] = cfg.relations;
  j["eta"] = cfg.eta;
  j["horizon"] = cfg.horizon;
  j["length_cap"] = cfg.length_cap;
  return j;
}

json constants_json(const ActionConstants& c, const std::int64_t* delta_n) {
  json j;
  j["delta"] = c.delta;
  j["D"] = c.D;
  j["M"] = c.M;
  j["T"] = c.T();
  j["k"] = c.k();
  j["m"] = c.m();
  j["b"] = c.b();
  j["A"] = c.A();
  if (delta_n) j["delta_n"] = *delta_n;
  return j;
}

json estimate_json(const GrowthEstimate& e) {
  json j;
  j["depth"] = e.depth;
  j["point_estimate"] = e.point_estimate;
  j["certified_upper"] = e.certified_upper;
  j["upper_beta"] = e.upper_beta;
  j["upper_depth"] = e.upper_depth;
  j["e_one"] = e.e_one;
  if (e.has_lower()) {
    j["certified_lower"] = e.certified_lower;
    j["lower_certificate"] = e.lower_certificate;
  }
  return j;
}

json check_json(const PropertyCheck& c) {
  json j;
  j["passed"] = c.passed;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["note"] = c.note;
  return j;
}

// Output routing for one run. Files are opened on first use so a failed
// computation leaves nothing half-written.
class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::string command)
      : cfg_(cfg), command_(std::move(command)) {}

  void table(const std::string& csv) {
    if (cfg_.out.empty()) {
      std::fputs(csv.c_str(), stdout);
      table_on_stdout_ = true;
      return;
    }
    write_file(cfg_.out + ".csv", csv);
  }

  void plot(const std::string& svg) {
    if (cfg_.out.empty())
      throw std::invalid_argument("--plot writes a file and needs --out BASE");
    write_file(cfg_.out + ".svg", svg);
  }

  void record(const json& config_echo, const json& constants, const json& payload,
              double wall_ms) {
    json rec;
    rec["command"] = command_;
    rec["config"] = config_echo;
    rec["constants"] = constants;
    rec["payload"] = payload;
    rec["wall_time_ms"] = wall_ms;
    rec["version"] = kSchemaVersion;
    std::string line = rec.dump();
    line += '\n';
    if (cfg_.out.empty()) {
      if (!table_on_stdout_) std::fputs(line.c_str(), stdout);
      return;
    }
    write_file(cfg_.out + ".jsonl", line);
  }

 private:
  static void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    f << body;
    if (!f) throw std::invalid_argument("write failed: " + path);
  }

  const RunConfig& cfg_;
  std::string command_;
  bool table_on_stdout_ = false;
};

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// --- subcommand bodies ---

int cmd_growth(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  int depth = cfg.depth.value_or(8);
  BallLevels lv = enumerate_levels(*ms.m, ms.S, depth, static_cast<std::size_t>(cfg.cap),
                                   cfg.shards, false);
  GrowthEstimate est = growth_estimate(lv);

  std::vector<std::int64_t> balls = lv.ball_sizes();
  std::string csv = "n,sphere,ball\n";
  for (std::size_t n = 0; n < lv.sizes.size(); ++n)
    csv += std::to_string(n) + "," + std::to_string(lv.sizes[n]) + "," +
           std::to_string(balls[n]) + "\n";

  json payload;
  payload["gens"] = formatted(*ms.m, ms.S);
  payload["spheres"] = lv.sizes;
  payload["balls"] = balls;
  payload["truncated"] = lv.truncated;
  payload["estimate"] = estimate_json(est);

  Emitter em(cfg, "growth");
  em.table(csv);
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), depth),
            constants_json(constants_of(cfg), nullptr), payload, timer.ms());
  return 0;
}

int cmd_find_hyperbolic(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  ActionConstants c = constants_of(cfg);
  Word first = find_hyperbolic_in_power(*ms.m, ms.S, c);
  DisplacementWitness w = large_displacement_element(*ms.m, ms.S, c);

  json payload;
  payload["first_hyperbolic"] = ms.m->format(first);
  json wit;
  wit["g"] = ms.m->format(w.g);
  wit["power"] = w.power;
  wit["L_S"] = w.L_S;
  wit["displacement"] = w.displacement;
  wit["lambda"] = w.L_g;
  wit["basepoint"] = ms.m->label(w.x);
  payload["witness"] = wit;

  Emitter em(cfg, "find-hyperbolic");
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), cfg.depth.value_or(0)),
            constants_json(c, nullptr), payload, timer.ms());
  return 0;
}

int cmd_free_pair(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  ActionConstants c = constants_of(cfg);
  int depth = cfg.depth.value_or(4);
  DisplacementWitness w = large_displacement_element(*ms.m, ms.S, c);
  FreePairCertificate pair = build_free_pair(*ms.m, ms.S, w, c, depth);

  json payload;
  payload["g"] = ms.m->format(pair.g);
  payload["s"] = ms.m->format(pair.s);
  payload["a"] = ms.m->format(pair.a);
  payload["b"] = ms.m->format(pair.b);
  payload["k"] = pair.k;
  payload["power"] = pair.power;
  payload["lambda_g"] = pair.L_g;
  payload["lambda_floor"] = pair.lambda_floor;
  payload["depth"] = pair.depth;
  payload["passed"] = pair.passed;
  if (!pair.failure.empty()) payload["failure"] = pair.failure;

  Emitter em(cfg, "free-pair");
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), depth),
            constants_json(c, nullptr), payload, timer.ms());
  return pair.passed ? 0 : 2;
}

int cmd_primitive_u(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  ActionConstants c = constants_of(cfg);
  int ball_radius = cfg.depth.value_or(3);
  DisplacementWitness w = large_displacement_element(*ms.m, ms.S, c);
  FreePairCertificate pair = build_free_pair(*ms.m, ms.S, w, c, 4);
  if (!pair.passed) throw std::runtime_error("free pair failed: " + pair.failure);
  PrimitiveElement prim = build_primitive_u(*ms.m, ms.S, pair, c, ball_radius);

  json payload;
  payload["u"] = ms.m->format(prim.u);
  payload["u_letters"] = static_cast<std::int64_t>(prim.u.size());
  payload["lambda"] = prim.ax.lambda;
  payload["power"] = prim.power;
  payload["construction"] = prim.construction;
  json checks;
  for (const auto& [name, ok] : prim.checks) checks[name] = ok;
  payload["checks"] = checks;
  payload["passed"] = prim.passed;
  if (!prim.failure.empty()) payload["failure"] = prim.failure;

  Emitter em(cfg, "primitive-u");
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), ball_radius),
            constants_json(c, nullptr), payload, timer.ms());
  return prim.passed ? 0 : 2;
}

json separators_payload(const GroupModel& m, const SeparatorSet& seps) {
  json payload;
  payload["g"] = m.format(seps.g);
  payload["s"] = m.format(seps.s);
  payload["w"] = m.format(seps.w);
  payload["z"] = m.format(seps.z);
  payload["power"] = seps.power;
  payload["b"] = seps.b;
  payload["delta_n"] = seps.context.delta_n;
  payload["L_power"] = seps.context.L_power;
  payload["basepoint"] = m.label(seps.context.y);
  json lens = json::array();
  for (const auto& u : seps.u) lens.push_back(static_cast<std::int64_t>(u.size()));
  payload["u_letters"] = lens;
  payload["d_y"] = seps.d_y;
  json report;
  for (const auto& [key, chk] : seps.report) report[key] = check_json(chk);
  payload["report"] = report;
  payload["passed"] = seps.passed;
  return payload;
}

int cmd_separators(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  ActionConstants c = constants_of(cfg);
  int cancel_radius = cfg.depth.value_or(3);
  SeparatorSet seps = build_separators(*ms.m, ms.S, c, cancel_radius);

  Emitter em(cfg, "separators");
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), cancel_radius),
            constants_json(c, &seps.context.delta_n), separators_payload(*ms.m, seps),
            timer.ms());
  return seps.passed ? 0 : 2;
}

int cmd_phi_check(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  ActionConstants c = constants_of(cfg);
  int radius = cfg.depth.value_or(2);
  SeparatorSet seps = build_separators(*ms.m, ms.S, c);
  PhiReport phi = phi_injectivity_check(*ms.m, ms.S, seps, c, radius, cfg.q);

  json payload;
  payload["radius"] = phi.radius;
  payload["q"] = phi.q;
  payload["ball"] = phi.ball;
  payload["adequate"] = phi.adequate;
  payload["tuples"] = phi.tuples;
  payload["injective"] = phi.injective;
  payload["hausdorff_max"] = phi.hausdorff_max;
  payload["hausdorff_bound"] = phi.hausdorff_bound;
  payload["sampled"] = phi.sampled;

  Emitter em(cfg, "phi-check");
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), radius),
            constants_json(c, &seps.context.delta_n), payload, timer.ms());
  return phi.injective ? 0 : 2;
}

json lower_payload(const GroupModel& m, const LowerBoundCertificate& cert) {
  json payload;
  payload["W"] = formatted(m, cert.W);
  payload["u_letters"] = static_cast<std::int64_t>(cert.u.size());
  payload["U_letters"] = static_cast<std::int64_t>(cert.U.size());
  payload["basis_size"] = static_cast<std::int64_t>(cert.B.size());
  payload["depth"] = cert.depth;
  payload["p"] = cert.p;
  payload["p_formula"] = cert.p_formula;
  payload["implied"] = cert.implied;
  payload["weak"] = cert.weak;
  payload["certificate_id"] = cert.certificate_id;
  payload["passed"] = cert.passed;
  if (!cert.failure.empty()) payload["failure"] = cert.failure;
  payload["estimate"] = estimate_json(cert.estimate);
  return payload;
}

int cmd_lower_bound(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  ActionConstants c = constants_of(cfg);
  int depth = cfg.depth.value_or(4);
  LowerBoundCertificate cert = lower_bound_audit(*ms.m, ms.S, c, depth);

  Emitter em(cfg, "lower-bound");
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), depth),
            constants_json(c, nullptr), lower_payload(*ms.m, cert), timer.ms());
  return cert.passed ? 0 : 2;
}

json table_payload(const GroupModel& m, const SpectrumTable& t) {
  json payload;
  payload["model"] = t.model;
  json bounds;
  bounds["max_cardinality"] = t.bounds.max_cardinality;
  bounds["max_length"] = t.bounds.max_length;
  bounds["depth"] = t.bounds.depth;
  bounds["generation_depth"] = t.bounds.generation_depth;
  bounds["shards"] = t.bounds.shards;
  bounds["cap"] = static_cast<std::int64_t>(t.bounds.cap);
  payload["bounds"] = bounds;
  payload["candidates"] = t.candidates;
  payload["excluded_generation"] = t.excluded_generation;
  payload["dropped_e_one"] = t.dropped_e_one;
  payload["dropped_elliptic"] = t.dropped_elliptic;
  payload["partial"] = t.partial;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r;
    r["set"] = formatted(m, row.set);
    r["balls"] = row.balls;
    r["estimate"] = estimate_json(row.estimate);
    r["dedup_class"] = row.dedup_class;
    r["minimum"] = row.minimum;
    r["merged_duplicate"] = row.merged_duplicate;
    r["absorbed"] = row.absorbed;
    rows.push_back(std::move(r));
  }
  payload["rows"] = rows;
  return payload;
}

std::string table_csv(const GroupModel& m, const SpectrumTable& t) {
  std::string csv =
      "rank,set,point_estimate,certified_upper,minimum,merged_duplicate,absorbed,"
      "dedup_class";
  for (int k = 0; k <= t.bounds.depth; ++k) csv += ",b" + std::to_string(k);
  csv += "\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    csv += std::to_string(i) + "," + join(formatted(m, row.set), "|") + "," +
           fmt_double(row.estimate.point_estimate, 12) + "," +
           fmt_double(row.estimate.certified_upper, 12) + "," +
           (row.minimum ? "1" : "0") + "," + (row.merged_duplicate ? "1" : "0") + "," +
           std::to_string(row.absorbed) + "," + row.dedup_class;
    for (int k = 0; k <= t.bounds.depth; ++k)
      csv += "," + (k < static_cast<int>(row.balls.size())
                        ? std::to_string(row.balls[k])
                        : std::string());
    csv += "\n";
  }
  return csv;
}

// Static plot of the sorted spectrum: point estimates as a solid line with
// markers, certified uppers dashed.
std::string spectrum_svg(const SpectrumTable& t) {
  const int W = 720, H = 420, mx = 64, my = 44;
  double lo = 1.0, hi = 1.0;
  for (const auto& row : t.rows) {
    hi = std::max(hi, row.estimate.certified_upper);
    lo = std::min(lo, row.estimate.point_estimate);
  }
  if (hi <= lo) hi = lo + 1.0;
  double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  std::size_t n = t.rows.size();
  auto X = [&](std::size_t i) {
    return mx + (n <= 1 ? 0.5 : static_cast<double>(i) / (n - 1)) * (W - 2 * mx);
  };
  auto Y = [&](double v) { return H - my - (v - lo) / (hi - lo) * (H - 2 * my); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                  std::to_string(W) + "\" height=\"" + std::to_string(H) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + std::to_string(W / 2) + "\" y=\"24\" text-anchor=\"middle\" "
       "font-family=\"monospace\" font-size=\"14\">" + t.model + " growth spectrum (" +
       std::to_string(n) + " rows)</text>\n";
  for (int gl = 0; gl <= 4; ++gl) {
    double v = lo + gl * (hi - lo) / 4;
    s += "<line x1=\"" + std::to_string(mx) + "\" y1=\"" + fmt_double(Y(v), 6) +
         "\" x2=\"" + std::to_string(W - mx) + "\" y2=\"" + fmt_double(Y(v), 6) +
         "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"" + std::to_string(mx - 6) + "\" y=\"" + fmt_double(Y(v) + 4, 6) +
         "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
         fmt_double(v, 4) + "</text>\n";
  }
  auto polyline = [&](const char* color, const char* dash, auto&& value) {
    std::string p = "<polyline fill=\"none\" stroke=\"";
    p += color;
    p += "\"";
    if (dash[0]) p += std::string(" stroke-dasharray=\"") + dash + "\"";
    p += " points=\"";
    for (std::size_t i = 0; i < n; ++i)
      p += fmt_double(X(i), 6) + "," + fmt_double(Y(value(t.rows[i])), 6) + " ";
    p += "\"/>\n";
    return p;
  };
  if (n) {
    s += polyline("#888", "4 3",
                  [](const SpectrumRow& r) { return r.estimate.certified_upper; });
    s += polyline("#202a80", "",
                  [](const SpectrumRow& r) { return r.estimate.point_estimate; });
    for (std::size_t i = 0; i < n; ++i)
      s += "<circle cx=\"" + fmt_double(X(i), 6) + "\" cy=\"" +
           fmt_double(Y(t.rows[i].estimate.point_estimate), 6) +
           "\" r=\"3\" fill=\"#202a80\"/>\n";
  }
  s += "<text x=\"" + std::to_string(W / 2) + "\" y=\"" + std::to_string(H - 10) +
       "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">rows by "
       "ascending point estimate</text>\n";
  s += "</svg>\n";
  return s;
}

int cmd_scan(const RunConfig& cfg, bool theta) {
  Timer timer;
  if (cfg.plot && cfg.out.empty())
    throw std::invalid_argument("--plot writes a file and needs --out BASE");
  auto m = make_model(cfg.model);
  ScanBounds b;
  b.max_cardinality = cfg.max_cardinality;
  b.max_length = cfg.max_length;
  b.depth = cfg.depth.value_or(8);
  b.shards = cfg.shards;
  b.cap = static_cast<std::size_t>(cfg.cap);
  SpectrumTable t = theta ? theta_scan(*m, b, cfg.require_hyperbolic, constants_of(cfg))
                          : xi_scan(*m, b);

  Emitter em(cfg, theta ? "theta-scan" : "xi-scan");
  em.table(table_csv(*m, t));
  if (cfg.plot) em.plot(spectrum_svg(t));
  em.record(config_json(cfg, cfg.gens, b.depth), constants_json(constants_of(cfg), nullptr),
            table_payload(*m, t), timer.ms());
  return 0;
}

int cmd_growth_tight(const RunConfig& cfg) {
  Timer timer;
  int depth_S = cfg.depth.value_or(9);
  if (depth_S < 2) throw std::invalid_argument("--depth must be at least 2");
  GrowthTightReport rep = growth_tight_experiment(depth_S, depth_S - 1);

  std::string csv = "k,ball_S,ball_fS\n";
  for (std::size_t k = 0; k < rep.balls_S.size(); ++k)
    csv += std::to_string(k) + "," + std::to_string(rep.balls_S[k]) + "," +
           (k < rep.balls_fS.size() ? std::to_string(rep.balls_fS[k]) : std::string()) +
           "\n";

  json payload;
  payload["balls_S"] = rep.balls_S;
  payload["balls_fS"] = rep.balls_fS;
  payload["depth_S"] = rep.depth_S;
  payload["depth_fS"] = rep.depth_fS;
  payload["first_strict_k"] = rep.first_strict_k;
  payload["trivial_bound_ok"] = rep.trivial_bound_ok;
  payload["estimate_S"] = estimate_json(rep.est_S);
  payload["estimate_fS"] = estimate_json(rep.est_fS);

  RunConfig echo = cfg;
  echo.model = "bs23z";
  Emitter em(cfg, "growth-tight");
  em.table(csv);
  em.record(config_json(echo, "a,t,z", depth_S), constants_json(constants_of(cfg), nullptr),
            payload, timer.ms());
  return rep.trivial_bound_ok ? 0 : 2;
}

int cmd_audit(const RunConfig& cfg) {
  Timer timer;
  ModelSet ms = load_model_set(cfg);
  ActionConstants c = constants_of(cfg);
  PipelineAudit audit = full_pipeline_audit(*ms.m, ms.S, c);

  json payload;
  json stages = json::array();
  for (const auto& st : audit.stages) {
    json s;
    s["name"] = st.name;
    s["passed"] = st.passed;
    s["detail"] = st.detail;
    stages.push_back(std::move(s));
  }
  payload["stages"] = stages;
  payload["passed"] = audit.passed;
  if (!audit.failed_stage.empty()) payload["failed_stage"] = audit.failed_stage;
  if (!audit.lower.certificate_id.empty())
    payload["lower"] = lower_payload(*ms.m, audit.lower);
  if (audit.phi.tuples) {
    json phi;
    phi["radius"] = audit.phi.radius;
    phi["q"] = audit.phi.q;
    phi["tuples"] = audit.phi.tuples;
    phi["injective"] = audit.phi.injective;
    phi["hausdorff_max"] = audit.phi.hausdorff_max;
    phi["hausdorff_bound"] = audit.phi.hausdorff_bound;
    payload["phi"] = phi;
  }

  Emitter em(cfg, "audit");
  em.record(config_json(cfg, join(formatted(*ms.m, ms.S), ","), cfg.depth.value_or(0)),
            constants_json(c, nullptr), payload, timer.ms());
  return audit.passed ? 0 : 2;
}

HomomorphismSequence make_cli_sequence(const RunConfig& cfg, const GroupModel& source,
                                       const GroupModel& target) {
  if (cfg.rules.empty())
    throw std::invalid_argument("--rules is required (one template per source generator)");
  std::vector<std::string> rules;
  for (auto& r : split_list(cfg.rules)) rules.push_back(trim(r));
  return make_sequence(source, target, rules);
}

int cmd_stable_kernel(const RunConfig& cfg) {
  Timer timer;
  auto source = make_model(cfg.model);
  auto target = make_model(cfg.target.empty() ? cfg.model : cfg.target);
  HomomorphismSequence seq = make_cli_sequence(cfg, *source, *target);
  StableKernelReport rep = stable_kernel_scan(seq, cfg.length_cap, cfg.horizon);

  json payload;
  payload["source"] = source->kind();
  payload["target"] = target->kind();
  payload["length_cap"] = rep.length_cap;
  payload["horizon"] = rep.horizon;
  payload["sampled"] = rep.sampled;
  payload["claims_at_horizon"] = rep.claims_at_horizon;
  json words = json::array();
  for (const auto& wc : rep.words) {
    json w;
    w["word"] = source->format(wc.word);
    w["fate"] = to_string(wc.fate);
    w["flips"] = wc.flips;
    w["last_flip_n"] = wc.last_flip_n;
    words.push_back(std::move(w));
  }
  payload["words"] = words;

  Emitter em(cfg, "stable-kernel");
  em.record(config_json(cfg, cfg.gens, cfg.depth.value_or(0)),
            constants_json(constants_of(cfg), nullptr), payload, timer.ms());
  return 0;
}

int cmd_factoring(const RunConfig& cfg) {
  Timer timer;
  auto source = make_model(cfg.model);
  auto target = make_model(cfg.target.empty() ? cfg.model : cfg.target);
  HomomorphismSequence seq = make_cli_sequence(cfg, *source, *target);
  if (cfg.relations.empty())
    throw std::invalid_argument("--relations is required (comma-separated source words)");
  std::vector<Word> rel = parse_words_annotated(*source, cfg.relations, "--relations");
  FactoringReport rep = factoring_check(seq, rel, cfg.horizon);

  json payload;
  payload["relations"] = formatted(*source, rep.relations);
  payload["sampled"] = rep.sampled;
  payload["n0"] = rep.n0 ? json(*rep.n0) : json(nullptr);

  Emitter em(cfg, "factoring");
  em.record(config_json(cfg, cfg.gens, cfg.depth.value_or(0)),
            constants_json(constants_of(cfg), nullptr), payload, timer.ms());
  return 0;
}

int cmd_continuity(const RunConfig& cfg) {
  Timer timer;
  auto source = make_model(cfg.model);
  auto target = make_model(cfg.target.empty() ? cfg.model : cfg.target);
  if (cfg.limit.empty())
    throw std::invalid_argument("--limit is required (model the estimates converge to)");
  auto limit = make_model(cfg.limit);
  HomomorphismSequence seq = make_cli_sequence(cfg, *source, *target);

  std::vector<Word> S;
  if (cfg.gens.empty())
    for (int g = 0; g < source->alphabet(); ++g) S.push_back(Word{make_letter(g, true)});
  else
    S = canonical_set(*source, parse_words_annotated(*source, cfg.gens, "--gens"));

  std::vector<Word> eta;
  if (cfg.eta.empty())
    for (int g = 0; g < limit->alphabet(); ++g) eta.push_back(Word{make_letter(g, true)});
  else
    eta = canonical_set(*limit, parse_words_annotated(*limit, cfg.eta, "--eta"));

  int depth = cfg.depth.value_or(6);
  ContinuityReport rep = growth_continuity_probe(seq, S, limit.get(), eta, cfg.horizon, depth);

  json payload;
  payload["depth"] = rep.depth;
  payload["limit_model"] = limit->kind();
  payload["eta"] = formatted(*limit, eta);
  payload["limit_balls"] = rep.limit_balls;
  payload["limit_estimate"] = estimate_json(rep.limit_estimate);
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json r;
    r["n"] = row.n;
    r["balls"] = row.balls;
    r["estimate"] = estimate_json(row.estimate);
    r["inequality_ok"] = row.inequality_ok;
    rows.push_back(std::move(r));
  }
  payload["rows"] = rows;

  Emitter em(cfg, "continuity");
  em.record(config_json(cfg, join(formatted(*source, S), ","), depth),
            constants_json(constants_of(cfg), nullptr), payload, timer.ms());
  return 0;
}

// --- configuration file ---

std::int64_t config_int(const std::string& key, const std::string& val) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(val, &used);
    if (used != val.size()) throw std::invalid_argument(val);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' needs an integer, got '" +
                                val + "'");
  }
}

bool config_bool(const std::string& key, const std::string& val) {
  if (val == "true" || val == "1" || val == "on") return true;
  if (val == "false" || val == "0" || val == "off") return false;
  throw std::invalid_argument("config key '" + key + "' needs true/false, got '" + val +
                              "'");
}

// INI values override command-line flags; unknown keys are rejected.
void apply_config_file(RunConfig& cfg) {
  if (cfg.config_path.empty()) return;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(cfg.config_path);
  } catch (const CLI::Error& e) {
    throw std::invalid_argument(std::string("config file: ") + e.what());
  }
  for (const auto& item : items) {
    const std::string key = item.fullname();
    const std::string val = item.inputs.empty() ? "" : item.inputs.back();
    if (key == "model") cfg.model = val;
    else if (key == "gens") cfg.gens = val;
    else if (key == "depth") cfg.depth = static_cast<int>(config_int(key, val));
    else if (key == "cap") cfg.cap = config_int(key, val);
    else if (key == "constants-D") cfg.D = config_int(key, val);
    else if (key == "constants-M") cfg.M = config_int(key, val);
    else if (key == "shards") cfg.shards = static_cast<int>(config_int(key, val));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(config_int(key, val));
    else if (key == "out") cfg.out = val;
    else if (key == "plot") cfg.plot = config_bool(key, val);
    else if (key == "q") cfg.q = static_cast<int>(config_int(key, val));
    else if (key == "max-cardinality")
      cfg.max_cardinality = static_cast<int>(config_int(key, val));
    else if (key == "max-length") cfg.max_length = static_cast<int>(config_int(key, val));
    else if (key == "require-hyperbolic") cfg.require_hyperbolic = config_bool(key, val);
    else if (key == "target") cfg.target = val;
    else if (key == "limit") cfg.limit = val;
    else if (key == "rules") cfg.rules = val;
    else if (key == "relations") cfg.relations = val;
    else if (key == "eta") cfg.eta = val;
    else if (key == "horizon") cfg.horizon = config_int(key, val);
    else if (key == "length-cap") cfg.length_cap = static_cast<int>(config_int(key, val));
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"growth spectra, acylindricity certificates, and limit experiments"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "group model: f1..fN, fpNN, bs23z");
    sub->add_option("--gens", cfg.gens,
                    "comma-separated generating words (default: standard set)");
    sub->add_option("--depth", cfg.depth, "radius / search depth (per-command default)");
    sub->add_option("--cap", cfg.cap, "element or candidate cap");
    sub->add_option("--constants-D", cfg.D, "uniform WPD constant D");
    sub->add_option("--constants-M", cfg.M, "power bound M for hyperbolic scans");
    sub->add_option("--shards", cfg.shards, "deterministic work partition count");
    sub->add_option("--seed", cfg.seed, "seed echoed into records");
    sub->add_option("--out", cfg.out, "output base path (BASE.jsonl/.csv/.svg)");
    sub->add_option("--config", cfg.config_path, "INI file; values override flags");
    return sub;
  };

  std::vector<std::pair<CLI::App*, std::function<int()>>> handlers;
  auto on = [&](CLI::App* sub, std::function<int()> fn) {
    handlers.emplace_back(sub, std::move(fn));
    return sub;
  };

  on(add_common(app.add_subcommand("growth", "sphere and ball table with e-brackets")),
     [&] { return cmd_growth(cfg); });
  on(add_common(app.add_subcommand("find-hyperbolic",
                                   "first hyperbolic element and displacement witness")),
     [&] { return cmd_find_hyperbolic(cfg); });
  on(add_common(app.add_subcommand("free-pair", "rank-2 free pair certificate")),
     [&] { return cmd_free_pair(cfg); });
  on(add_common(app.add_subcommand("primitive-u", "primitive element with audit trail")),
     [&] { return cmd_primitive_u(cfg); });
  on(add_common(app.add_subcommand("separators", "separator quadruple and property report")),
     [&] { return cmd_separators(cfg); });
  CLI::App* phi = add_common(
      app.add_subcommand("phi-check", "tuple-concatenation injectivity check"));
  phi->add_option("--q", cfg.q, "tuple length");
  on(phi, [&] { return cmd_phi_check(cfg); });
  on(add_common(app.add_subcommand("lower-bound", "certified growth lower bound")),
     [&] { return cmd_lower_bound(cfg); });

  auto add_scan = [&](CLI::App* sub) {
    sub->add_option("--max-cardinality", cfg.max_cardinality, "largest set size scanned");
    sub->add_option("--max-length", cfg.max_length, "longest word in a candidate set");
    sub->add_flag("--plot", cfg.plot, "write BASE.svg with the sorted spectrum");
    return sub;
  };
  on(add_scan(add_common(
         app.add_subcommand("xi-scan", "growth spectrum over generating sets"))),
     [&] { return cmd_scan(cfg, false); });
  CLI::App* theta = add_scan(add_common(
      app.add_subcommand("theta-scan", "growth spectrum over subgroup sets")));
  theta->add_flag("--require-hyperbolic", cfg.require_hyperbolic,
                  "drop sets with no hyperbolic element in S^M");
  on(theta, [&] { return cmd_scan(cfg, true); });

  on(add_common(app.add_subcommand("growth-tight",
                                   "ball comparison against the endomorphic image")),
     [&] { return cmd_growth_tight(cfg); });
  on(add_common(app.add_subcommand("audit", "end-to-end certificate pipeline")),
     [&] { return cmd_audit(cfg); });

  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--target", cfg.target, "target model (default: --model)");
    sub->add_option("--rules", cfg.rules,
                    "comma-separated templates, one per source generator");
    sub->add_option("--horizon", cfg.horizon, "largest sampled n");
    return sub;
  };
  CLI::App* kernel = add_limit(add_common(
      app.add_subcommand("stable-kernel", "word fates along a homomorphism sequence")));
  kernel->add_option("--length-cap", cfg.length_cap, "classify words up to this length");
  on(kernel, [&] { return cmd_stable_kernel(cfg); });
  CLI::App* factoring = add_limit(add_common(
      app.add_subcommand("factoring", "do the relations die from some n on")));
  factoring->add_option("--relations", cfg.relations, "comma-separated source words");
  on(factoring, [&] { return cmd_factoring(cfg); });
  CLI::App* continuity = add_limit(add_common(
      app.add_subcommand("continuity", "pushed-forward balls against a limit model")));
  continuity->add_option("--limit", cfg.limit, "limit model name");
  continuity->add_option("--eta", cfg.eta, "limit generating words (default: standard)");
  on(continuity, [&] { return cmd_continuity(cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    apply_config_file(cfg);
    for (auto& [sub, fn] : handlers)
      if (sub->parsed()) return fn();
    throw std::invalid_argument("no subcommand selected");
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "check failed: %s\n", e.what());
    return 2;
  }
}
