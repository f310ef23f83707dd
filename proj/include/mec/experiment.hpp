#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alternating.hpp"
#include "driver.hpp"
#include "generators.hpp"
#include "matching_engine.hpp"

namespace mec {

struct ConfigError : GraphError {
  using GraphError::GraphError;
};

struct ExperimentConfig {
  // instance
  std::string generator = "random_regular";  // random_regular | planted | rotation_cycle | cycle | file
  int n = 200;
  int d = 3;
  bool bipartite = true;  // random_regular / planted base
  int plant_r = 4;
  double plant_fraction = 0.02;
  std::string input;  // edge list for generator=file
  // pipeline
  std::string mode = "auto";  // bipartite | general | auto
  std::string schedule = "practical";
  int r = 1, r_prime = 10, r1 = 8, n0 = 9, L = 100, s_max = 10, c_tilde = 12, samples = 64;
  bool conjecture_mode = false;
  std::vector<uint64_t> seeds{1};
  std::vector<int> n0_sweep;  // sweep only; empty means {n0}
  // output
  std::string out_dir = "out";
  std::string prefix = "run";
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

inline long long parse_integer(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  }
}

inline int parse_int(const std::string& v, const std::string& where) {
  long long x = parse_integer(v, where);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(where + ": value out of range: " + v);
  return static_cast<int>(x);
}

inline bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError(where + ": expected true/false, got '" + v + "'");
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace detail

inline void apply_config_value(ExperimentConfig& c, const std::string& key, const std::string& value,
                               const std::string& where) {
  using namespace detail;
  std::map<std::string, int*> ints{{"n", &c.n},           {"d", &c.d},          {"plant_r", &c.plant_r}, {"r", &c.r},
                                   {"r_prime", &c.r_prime}, {"r1", &c.r1},       {"n0", &c.n0},           {"L", &c.L},
                                   {"s_max", &c.s_max},   {"c_tilde", &c.c_tilde}, {"samples", &c.samples}};
  std::map<std::string, std::string*> strs{{"generator", &c.generator}, {"input", &c.input},     {"mode", &c.mode},
                                           {"schedule", &c.schedule},   {"out_dir", &c.out_dir}, {"prefix", &c.prefix}};
  if (auto it = ints.find(key); it != ints.end()) {
    *it->second = parse_int(value, where);
  } else if (auto is = strs.find(key); is != strs.end()) {
    *is->second = value;
  } else if (key == "bipartite") {
    c.bipartite = parse_bool(value, where);
  } else if (key == "conjecture_mode") {
    c.conjecture_mode = parse_bool(value, where);
  } else if (key == "plant_fraction") {
    try {
      size_t pos = 0;
      c.plant_fraction = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(where + ": expected a number, got '" + value + "'");
    }
  } else if (key == "seeds") {
    c.seeds.clear();
    for (const auto& s : split_list(value)) {
      long long x = parse_integer(s, where);
      if (x < 0) throw ConfigError(where + ": seeds must be non-negative");
      c.seeds.push_back(static_cast<uint64_t>(x));
    }
  } else if (key == "n0_sweep") {
    c.n0_sweep.clear();
    for (const auto& s : split_list(value)) c.n0_sweep.push_back(parse_int(s, where));
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

// key=value lines; '#' starts a comment.
inline void parse_config(std::istream& in, ExperimentConfig& c, const std::string& source = "config") {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    std::string key = detail::trim(line.substr(0, eq)), value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    apply_config_value(c, key, value, where);
  }
}

struct TheoryConstants {
  int r_prime = 0;
  double log10_inv_c0 = 0;  // c0 = d^-r'
  double r2 = 0;            // ceil(16 / c0) + 1, also used as r1
  double c_tilde = 0;       // 2d / c0
};

inline TheoryConstants theory_constants(int d, int r) {
  TheoryConstants t;
  t.r_prime = 3 * r + 7;
  t.log10_inv_c0 = t.r_prime * std::log10(static_cast<double>(d));
  t.r2 = 16.0 * std::pow(static_cast<double>(d), t.r_prime) + 1.0;
  t.c_tilde = 2.0 * std::pow(static_cast<double>(d), t.r_prime + 1);
  return t;
}

// Checks positivity and, for the theory schedule, replaces r', r1 and c_tilde with the derived
// constants when they fit in an int.
inline void validate_config(ExperimentConfig& c) {
  auto positive = [](const char* name, long long v) {
    if (v <= 0) throw ConfigError(std::string("config: ") + name + " must be positive, got " + std::to_string(v));
  };
  positive("n", c.n);
  positive("d", c.d);
  positive("r", c.r);
  positive("r_prime", c.r_prime);
  positive("r1", c.r1);
  positive("n0", c.n0);
  positive("L", c.L);
  positive("s_max", c.s_max);
  positive("c_tilde", c.c_tilde);
  positive("samples", c.samples);
  positive("plant_r", c.plant_r);
  for (int v : c.n0_sweep) positive("n0_sweep entry", v);
  if (c.seeds.empty()) throw ConfigError("config: seeds must not be empty");
  if (!(c.plant_fraction > 0 && c.plant_fraction <= 1)) throw ConfigError("config: plant_fraction must be in (0, 1]");
  if (c.mode != "auto" && c.mode != "bipartite" && c.mode != "general")
    throw ConfigError("config: mode must be auto, bipartite or general");
  static const std::set<std::string> gens{"random_regular", "planted", "rotation_cycle", "cycle", "file"};
  if (!gens.count(c.generator)) throw ConfigError("config: unknown generator '" + c.generator + "'");
  if (c.generator == "file" && c.input.empty()) throw ConfigError("config: generator=file needs input=<path>");
  if (c.schedule == "theory") {
    auto t = theory_constants(c.d, c.r);
    const double lim = static_cast<double>(std::numeric_limits<int>::max());
    if (t.r2 > lim || t.c_tilde > lim) {
      std::ostringstream os;
      os << std::setprecision(3) << "config: theory schedule constants do not fit in an int for d=" << c.d << ", r=" << c.r
         << ": r'=" << t.r_prime << ", 1/c0=1e" << std::fixed << t.log10_inv_c0 << std::defaultfloat << ", r1=r2=" << t.r2
         << ", c_tilde=" << t.c_tilde;
      throw ConfigError(os.str());
    }
    c.r_prime = t.r_prime;
    c.r1 = static_cast<int>(t.r2);
    c.c_tilde = static_cast<int>(t.c_tilde);
  } else if (c.schedule != "practical") {
    throw ConfigError("config: schedule must be theory or practical");
  }
}

inline Instance build_instance(const ExperimentConfig& c, uint64_t seed) {
  if (c.generator == "random_regular") return random_regular(c.n, c.d, c.bipartite, seed);
  if (c.generator == "planted")
    return plant_high_degree(random_regular(c.n, c.d, c.bipartite, seed), c.plant_r, c.plant_fraction, seed);
  if (c.generator == "rotation_cycle") return rotation_cycle(c.n);
  if (c.generator == "cycle") return make_instance(cycle_graph(c.n), 2, seed);
  return load_edge_list(c.input, c.d);
}

// ---------------------------------------------------------------------------
// Decay fit

struct DecayFit {
  bool defined = false;
  double ratio = 0;  // exp(slope) of log(count+1) against round
  std::optional<double> r2;
  int points = 0;
};

inline DecayFit fit_decay(const std::vector<std::pair<double, double>>& round_count) {
  DecayFit f;
  f.points = static_cast<int>(round_count.size());
  if (f.points < 2) return f;
  double sx = 0, sy = 0;
  for (auto [x, c] : round_count) sx += x, sy += std::log(c + 1);
  const double mx = sx / f.points, my = sy / f.points;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, c] : round_count) {
    const double y = std::log(c + 1);
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0) return f;
  f.defined = true;
  const double slope = sxy / sxx;
  f.ratio = std::exp(slope);
  if (syy > 0) f.r2 = (sxy * sxy) / (sxx * syy);
  return f;
}

// ---------------------------------------------------------------------------
// Runs

struct RunArtifacts {
  std::string stem;  // path prefix shared by the files below
  std::string decay_csv, coloring_txt, audit_csv, claims_csv, summary_csv, report_txt;
  std::vector<long long> unhappy_history;
  int n = 0;
  int palette_used = 0, palette_bound = 0;
  double exceptional_fraction = 0;
  bool proper = false;
  int claims_failed = 0;
};

namespace detail {

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write " + path);
  out << body;
}

inline std::string fixed(double x, int prec = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << x;
  return os.str();
}

}  // namespace detail

inline std::string decay_csv(const std::vector<long long>& history, int n) {
  std::ostringstream os;
  os << "round,unhappy_count,unhappy_fraction\n";
  for (size_t i = 0; i < history.size(); ++i)
    os << i << "," << history[i] << "," << detail::fixed(n ? static_cast<double>(history[i]) / n : 0.0) << "\n";
  return os.str();
}

inline std::string emit_report(const std::string& stem);

struct EngineDiagnosis {
  Instance inst;
  EngineState engine;
  DiagnosticRun run;
  std::vector<ClaimResult> claims;
};

// Top level only: K, the initial matching, run_rounds(n0), then the structural claim checks.
// Engine-side violations are appended as failing "engine" claims.
inline EngineDiagnosis diagnose_instance(const ExperimentConfig& c, Instance inst, int n0) {
  EngineDiagnosis out;
  out.inst = std::move(inst);
  KContext k = build_K(out.inst, c.r, c.r_prime, nullptr, c.r1);
  auto im = initial_matching(out.inst, c.r1);
  EngineParams ep;
  ep.n0 = n0;
  out.engine = run_rounds(out.inst, k, ep, im.matching);
  DiagnosticParams dp;
  dp.n0 = n0;
  dp.c_tilde = c.c_tilde;
  out.run = diagnose(out.inst, k, out.engine.matching.edges(), dp);
  out.claims = check_structural_claims(out.run);
  for (const auto& v : out.engine.violations) out.claims.push_back({"engine", 0, ClaimStatus::Fail, v});
  return out;
}

// One instance, one n0: engine rounds and claim checks at the top level, then the full colouring.
inline RunArtifacts run_single(const ExperimentConfig& c, uint64_t seed, int n0, const std::string& stem) {
  auto dg = diagnose_instance(c, build_instance(c, seed), n0);
  const Instance& inst = dg.inst;
  const EngineState& es = dg.engine;
  const auto& claims = dg.claims;
  RunArtifacts a;
  a.stem = stem;
  a.n = inst.graph.n();
  a.unhappy_history = es.unhappy_history;
  for (const auto& cl : claims) a.claims_failed += cl.status == ClaimStatus::Fail;

  ColorMode mode = c.mode == "bipartite" ? ColorMode::Bipartite
                   : c.mode == "general" ? ColorMode::General
                                         : (inst.bipartite ? ColorMode::Bipartite : ColorMode::General);
  DriverParams p;
  p.r = c.r;
  p.r_prime = c.r_prime;
  p.r1 = c.r1;
  p.n0 = n0;
  p.L = c.L;
  p.s_max = c.s_max;
  p.samples = c.samples;
  p.conjecture_mode = c.conjecture_mode;
  p.seed = seed;
  ColoringState cs = edge_color(inst, mode, p);
  a.palette_used = cs.palette_used;
  a.palette_bound = cs.palette_bound;
  a.exceptional_fraction = cs.exceptional_vertex_fraction();
  a.proper = is_proper(inst.graph, cs.colors);

  a.decay_csv = stem + "_decay.csv";
  a.coloring_txt = stem + "_coloring.txt";
  a.audit_csv = stem + "_audit.csv";
  a.claims_csv = stem + "_claims.csv";
  a.summary_csv = stem + "_summary.csv";
  a.report_txt = stem + "_report.txt";
  detail::write_file(a.decay_csv, decay_csv(es.unhappy_history, a.n));
  detail::write_file(a.coloring_txt, coloring_text(inst.graph, cs));
  detail::write_file(a.audit_csv, audit_csv(cs));
  detail::write_file(a.claims_csv, claims_csv(claims));
  std::ostringstream sum;
  sum << "n,d,mode,n0,seed,palette_used,palette_bound,exceptional_fraction,proper\n"
      << a.n << "," << inst.d << "," << mode_name(mode) << "," << n0 << "," << seed << "," << a.palette_used << ","
      << a.palette_bound << "," << detail::fixed(a.exceptional_fraction) << "," << (a.proper ? 1 : 0) << "\n";
  detail::write_file(a.summary_csv, sum.str());
  detail::write_file(a.report_txt, emit_report(stem));
  return a;
}

// Every seed, and every n0 of the sweep (or just n0). Runs in seed order, so output is a
// function of the config alone.
inline std::vector<RunArtifacts> run_experiment(ExperimentConfig c) {
  validate_config(c);
  std::filesystem::create_directories(c.out_dir);
  std::vector<int> n0s = c.n0_sweep.empty() ? std::vector<int>{c.n0} : c.n0_sweep;
  std::vector<RunArtifacts> out;
  for (uint64_t seed : c.seeds)
    for (int n0 : n0s) {
      std::string stem = (std::filesystem::path(c.out_dir) / (c.prefix + "_s" + std::to_string(seed))).string();
      if (!c.n0_sweep.empty()) stem += "_n0" + std::to_string(n0);
      out.push_back(run_single(c, seed, n0, stem));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Report

namespace detail {

inline std::optional<std::vector<std::vector<std::string>>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline int column(const std::vector<std::string>& header, const std::string& name) {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace detail

// Summary built from the files written under `stem`; absent files are listed and the
// report is marked partial.
inline std::string emit_report(const std::string& stem) {
  std::ostringstream os;
  std::vector<std::string> missing;
  os << "report " << std::filesystem::path(stem).filename().string() << "\n";

  auto summary = detail::read_csv(stem + "_summary.csv");
  if (summary && summary->size() >= 2) {
    const auto& h = (*summary)[0];
    const auto& r = (*summary)[1];
    auto get = [&](const char* k) {
      int i = detail::column(h, k);
      return i >= 0 && i < static_cast<int>(r.size()) ? r[static_cast<size_t>(i)] : std::string("?");
    };
    const bool within = get("palette_used") != "?" && get("palette_bound") != "?" &&
                        std::stoi(get("palette_used")) <= std::stoi(get("palette_bound"));
    os << "instance: n=" << get("n") << " d=" << get("d") << " mode=" << get("mode") << " n0=" << get("n0")
       << " seed=" << get("seed") << "\n";
    os << "palette: used " << get("palette_used") << " of bound " << get("palette_bound") << (within ? " (within)" : " (EXCEEDED)")
       << ", proper=" << get("proper") << "\n";
    os << "exceptional vertex fraction: " << get("exceptional_fraction") << "\n";
  } else {
    missing.push_back("summary");
  }

  auto decay = detail::read_csv(stem + "_decay.csv");
  if (decay && !decay->empty()) {
    const int ci = detail::column((*decay)[0], "unhappy_count");
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 1; i < decay->size() && ci >= 0; ++i)
      pts.emplace_back(std::stod((*decay)[i][0]), std::stod((*decay)[i][static_cast<size_t>(ci)]));
    auto f = fit_decay(pts);
    os << "decay: ";
    if (!f.defined) {
      os << "ratio undefined (" << f.points << " row" << (f.points == 1 ? "" : "s") << ")\n";
    } else {
      os << "ratio " << detail::fixed(f.ratio, 4) << ", R^2 " << (f.r2 ? detail::fixed(*f.r2, 4) : std::string("undefined"))
         << " over " << f.points << " rounds\n";
    }
  } else {
    missing.push_back("decay");
  }

  auto claims = detail::read_csv(stem + "_claims.csv");
  if (claims && !claims->empty()) {
    int pass = 0, fail = 0, skip = 0;
    std::vector<std::string> failing;
    for (size_t i = 1; i < claims->size(); ++i) {
      const auto& r = (*claims)[i];
      const std::string st = r.size() > 2 ? r[2] : "";
      if (st == "PASS") ++pass;
      else if (st == "SKIP") ++skip;
      else {
        ++fail;
        failing.push_back(r[0] + " n=" + (r.size() > 1 ? r[1] : "?") + ": " + (r.size() > 3 ? r[3] : ""));
      }
    }
    os << "claims: " << pass << " pass, " << fail << " fail, " << skip << " skip\n";
    for (const auto& f : failing) os << "  FAIL " << f << "\n";
  } else {
    missing.push_back("claims");
  }

  if (!missing.empty()) {
    os << "PARTIAL: missing";
    for (const auto& m : missing) os << " " << m;
    os << "\n";
  }
  return os.str();
}

}  // namespace mec
