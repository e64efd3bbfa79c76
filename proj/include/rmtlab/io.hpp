// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// io.hpp: strict JSON run configs, CSV emission and provenance.
//
// Config files are JSON objects with schema_version 1. Unknown keys are
// rejected at every level. The config hash is FNV-1a 64 of the canonical
// dump (sorted keys, no whitespace) of the effective config, i.e. after an
// RMT_SEED override, printed as 16 hex digits.
#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rmtlab/experiments.hpp"

#ifndef RMTLAB_VERSION
#define RMTLAB_VERSION "0.1.0"
#endif

namespace rmt::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// A configuration problem: the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void config_fail(const std::string& what) { throw ConfigError(what); }

// ------------------------------------------------------------- formatting

/// 17 significant digits: round-trips every double.
inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string config_hash(const json& j) { return hex64(fnv1a64(j.dump())); }

inline std::string hash_line(const std::string& hash) { return "# config_hash=" + hash + "\n"; }

// --------------------------------------------------------------- parsing

namespace detail {

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) config_fail(where + " must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) config_fail("unknown key '" + k + "' in " + where);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    config_fail("bad or missing '" + key + "' in " + where);
  }
}

inline std::size_t get_count(const json& j, const std::string& key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) config_fail("'" + key + "' in " + where + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace detail

inline EnsembleKind parse_kind(const std::string& s) {
  static const std::map<std::string, EnsembleKind> m{
      {"gue", EnsembleKind::GUE},          {"goe", EnsembleKind::GOE},
      {"wigner", EnsembleKind::WignerGeneric}, {"wishart", EnsembleKind::Wishart},
      {"haar", EnsembleKind::Haar},        {"haar-power", EnsembleKind::HaarPower},
      {"sum", EnsembleKind::RandomizedSum}, {"compression", EnsembleKind::Compression},
      {"qsg", EnsembleKind::QuantumSpinGlass}, {"ginibre", EnsembleKind::Ginibre}};
  auto it = m.find(s);
  if (it == m.end()) config_fail("unknown ensemble kind '" + s + "'");
  return it->second;
}

inline Group parse_group(const std::string& s) {
  static const std::map<std::string, Group> m{{"o", Group::O}, {"so", Group::SO}, {"u", Group::U}, {"su", Group::SU}, {"sp", Group::Sp}};
  auto it = m.find(s);
  if (it == m.end()) config_fail("unknown group '" + s + "'");
  return it->second;
}

inline Ingredient parse_ingredient(const std::string& s) {
  if (s == "signs") return Ingredient::Signs;
  if (s == "equispaced") return Ingredient::Equispaced;
  if (s == "zero") return Ingredient::Zero;
  config_fail("unknown ingredient '" + s + "'");
}

/// Ensemble names accepted on the command line: the kinds above, plus
/// "haar-<group>" and "haar-power-<group>" shorthands (e.g. haar-u).
inline EnsembleSpec parse_ensemble_name(const std::string& s) {
  EnsembleSpec e;
  for (const std::string prefix : {"haar-power-", "haar-"}) {
    if (s.rfind(prefix, 0) == 0 && s != "haar-power") {
      e.kind = prefix == "haar-" ? EnsembleKind::Haar : EnsembleKind::HaarPower;
      e.group = parse_group(s.substr(prefix.size()));
      return e;
    }
  }
  e.kind = parse_kind(s);
  return e;
}

inline EnsembleSpec parse_ensemble(const json& j) {
  const std::string where = "ensemble";
  detail::check_keys(j, {"kind", "n", "m", "aspect", "group", "k", "alpha", "entries", "field", "a", "b", "paper_literal_goe"}, where);
  EnsembleSpec e = parse_ensemble_name(detail::get<std::string>(j, "kind", where));
  if (j.contains("n")) e.n = detail::get_count(j, "n", where);
  if (j.contains("m")) e.m = detail::get_count(j, "m", where);
  if (j.contains("aspect")) e.aspect = detail::get<double>(j, "aspect", where);
  if (j.contains("group")) e.group = parse_group(detail::get<std::string>(j, "group", where));
  if (j.contains("k")) e.k = detail::get_count(j, "k", where);
  if (j.contains("alpha")) e.alpha = detail::get<double>(j, "alpha", where);
  if (j.contains("entries")) {
    const auto d = detail::get<std::string>(j, "entries", where);
    if (d != "gaussian" && d != "uniform") config_fail("entries must be gaussian or uniform");
    e.entries = d == "gaussian" ? EntryDist::Gaussian : EntryDist::Uniform;
  }
  if (j.contains("field")) {
    const auto f = detail::get<std::string>(j, "field", where);
    if (f != "real" && f != "complex") config_fail("field must be real or complex");
    e.field = f == "real" ? Field::Real : Field::Complex;
  }
  if (j.contains("a")) e.a = parse_ingredient(detail::get<std::string>(j, "a", where));
  if (j.contains("b")) e.b = parse_ingredient(detail::get<std::string>(j, "b", where));
  if (j.contains("paper_literal_goe")) e.paper_literal_goe = detail::get<bool>(j, "paper_literal_goe", where);
  if (e.kind == EnsembleKind::Compression && e.alpha == 0.0 && e.k == 0) e.alpha = 0.5;
  if (e.kind == EnsembleKind::Wishart && e.aspect == 0.0 && e.m == 0) e.aspect = 1.0;
  if (e.aspect < 0.0 || e.aspect > 1.0) config_fail("aspect must lie in (0, 1]");
  if (e.alpha < 0.0 || e.alpha > 1.0) config_fail("alpha must lie in (0, 1]");
  return e;
}

inline LimitLaw make_law(const std::string& name, double rho) {
  try {
    if (name == "semicircle") return LimitLaw::semicircle();
    if (name == "mp") return LimitLaw::marchenko_pastur(rho);
    if (name == "circle") return LimitLaw::uniform_circle();
    if (name == "disc") return LimitLaw::uniform_disc();
    if (name == "gaussian") return LimitLaw::std_gaussian();
  } catch (const Error& e) {
    config_fail(e.what());
  }
  config_fail("unknown law '" + name + "'");
}

inline LimitLaw parse_law(const json& j) {
  if (j.is_string()) return make_law(j.get<std::string>(), 1.0);
  detail::check_keys(j, {"name", "rho"}, "law");
  const double rho = j.contains("rho") ? detail::get<double>(j, "rho", "law") : 1.0;
  return make_law(detail::get<std::string>(j, "name", "law"), rho);
}

struct SlopeWindow {
  std::optional<double> min, max;
  bool contains(double s) const { return (!min || s >= *min) && (!max || s <= *max); }
};

/// The validated payload of a `rates` config.
struct RatesConfig {
  ExperimentConfig experiment;
  std::optional<SlopeWindow> window;
  std::string seed_source = "config";
  json effective;  // canonical config after overrides
  std::string hash;
};

inline TargetKind parse_target(const std::string& s) {
  if (s == "auto") return TargetKind::Auto;
  if (s == "law") return TargetKind::Law;
  if (s == "discretization") return TargetKind::Discretization;
  if (s == "pooled-mean") return TargetKind::PooledMean;
  config_fail("unknown target '" + s + "'");
}

/// Parses a rates config. `env_seed` (from RMT_SEED) replaces the seed.
inline RatesConfig parse_rates_config(const json& j, std::optional<std::uint64_t> env_seed) {
  const std::string where = "config";
  detail::check_keys(j,
                     {"schema_version", "ensemble", "sizes", "reps", "p", "target", "law", "seed", "threads",
                      "budget_seconds", "pool_reps", "window"},
                     where);
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != kSchemaVersion)
    config_fail("schema_version must be " + std::to_string(kSchemaVersion));
  RatesConfig rc;
  auto& c = rc.experiment;
  if (!j.contains("ensemble")) config_fail("config needs an ensemble");
  c.ensemble = parse_ensemble(j["ensemble"]);
  if (!j.contains("sizes") || !j["sizes"].is_array()) config_fail("config needs a sizes array");
  for (const auto& v : j["sizes"]) {
    if (!v.is_number_integer() || v.get<long long>() < 1) config_fail("sizes must be positive integers");
    c.sizes.push_back(v.get<std::size_t>());
  }
  if (j.contains("reps")) c.reps = detail::get_count(j, "reps", where);
  if (j.contains("p")) c.p = detail::get<double>(j, "p", where);
  if (j.contains("target")) c.target = parse_target(detail::get<std::string>(j, "target", where));
  if (j.contains("law")) c.law = parse_law(j["law"]);
  if (j.contains("seed")) c.seed = detail::get<std::uint64_t>(j, "seed", where);
  if (j.contains("threads")) c.threads = static_cast<unsigned>(detail::get_count(j, "threads", where));
  if (j.contains("budget_seconds")) c.budget_seconds = detail::get<double>(j, "budget_seconds", where);
  if (j.contains("pool_reps")) c.pool_reps = detail::get_count(j, "pool_reps", where);
  if (j.contains("window")) {
    detail::check_keys(j["window"], {"min", "max"}, "window");
    SlopeWindow w;
    if (j["window"].contains("min")) w.min = detail::get<double>(j["window"], "min", "window");
    if (j["window"].contains("max")) w.max = detail::get<double>(j["window"], "max", "window");
    rc.window = w;
  }
  rc.effective = j;
  if (env_seed) {
    c.seed = *env_seed;
    rc.seed_source = "RMT_SEED";
    rc.effective["seed"] = *env_seed;
  }
  try {
    c.validate();
  } catch (const Error& e) {
    config_fail(e.what());
  }
  rc.hash = config_hash(rc.effective);
  return rc;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    config_fail("malformed JSON in '" + path + "': " + e.what());
  }
}

/// RMT_SEED as an unsigned 64-bit integer, if set.
inline std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("RMT_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos, 10);
    if (pos != std::string(s).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    config_fail("RMT_SEED must be an unsigned integer");
  }
}

// ------------------------------------------------------------------ output

inline std::string rates_rows_csv(const RateReport& r, const std::string& hash) {
  std::string s = hash_line(hash) + "ensemble,n,rep,p,distance,tail_bound\n";
  for (const auto& row : r.rows)
    s += r.ensemble + "," + std::to_string(row.n) + "," + std::to_string(row.rep) + "," + num(r.p) + "," +
         num(row.distance) + "," + num(row.tail_bound) + "\n";
  return s;
}

inline std::string rates_timings_csv(const RateReport& r, const std::string& hash) {
  std::string s = hash_line(hash) + "n,rep,runtime_ms\n";
  for (const auto& row : r.rows) s += std::to_string(row.n) + "," + std::to_string(row.rep) + "," + num(row.runtime_ms) + "\n";
  return s;
}

inline json provenance(const std::string& hash, std::uint64_t seed, const std::string& seed_source) {
  return json{{"config_hash", hash}, {"code_version", RMTLAB_VERSION}, {"seed", seed}, {"seed_source", seed_source}};
}

inline json rates_summary(const RateReport& r, const RatesConfig& rc) {
  json sizes = json::array();
  for (const auto& s : r.sizes)
    sizes.push_back({{"n", s.n},
                     {"count", s.count},
                     {"mean_distance", s.mean_distance},
                     {"stderr_distance", s.stderr_distance},
                     {"mean_tail_bound", s.mean_tail},
                     {"target_error", s.target_error}});
  json j{{"schema_version", kSchemaVersion},
         {"ensemble", r.ensemble},
         {"target", r.target},
         {"p", r.p},
         {"sizes", sizes},
         {"budget_exhausted", r.budget_exhausted},
         {"config", rc.effective},
         {"provenance", provenance(rc.hash, rc.experiment.seed, rc.seed_source)}};
  if (r.fit) {
    j["slope"] = r.fit->slope;
    j["intercept"] = r.fit->intercept;
    j["stderr"] = r.fit->stderr_slope;
    j["r2"] = r.fit->r2;
  } else {
    j["slope"] = nullptr;
    j["intercept"] = nullptr;
    j["stderr"] = nullptr;
    j["r2"] = nullptr;
  }
  if (rc.window) {
    json w;
    w["min"] = rc.window->min ? json(*rc.window->min) : json(nullptr);
    w["max"] = rc.window->max ? json(*rc.window->max) : json(nullptr);
    w["verdict"] = r.fit ? json(rc.window->contains(r.fit->slope) ? "pass" : "fail") : json(nullptr);
    j["window"] = w;
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidSpec, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(ErrorKind::InvalidSpec, "write failed for '" + path + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidSpec, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The hash recorded in the first line of a CSV written by this library.
inline std::optional<std::string> csv_hash(const std::string& content) {
  const std::string key = "# config_hash=";
  if (content.rfind(key, 0) != 0) return std::nullopt;
  const auto end = content.find('\n');
  return content.substr(key.size(), end - key.size());
}

/// Reads a CSV with a header naming `re` (and optionally `im`) columns.
/// Lines starting with '#' are skipped.
inline std::vector<cplx> read_points_csv(const std::string& path) {
  if (!std::ifstream(path)) config_fail("cannot open input '" + path + "'");
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<std::string> header;
  long re = -1, im = -1;
  std::vector<cplx> pts;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::string cur;
    std::istringstream ls(l);
    while (std::getline(ls, cur, ',')) f.push_back(cur);
    return f;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line);
    if (header.empty()) {
      header = f;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == "re" || f[i] == "atom_re") re = static_cast<long>(i);
        if (f[i] == "im" || f[i] == "atom_im") im = static_cast<long>(i);
      }
      if (re < 0) config_fail("'" + path + "' has no re column");
      continue;
    }
    try {
      const double x = std::stod(f.at(static_cast<std::size_t>(re)));
      const double y = im >= 0 ? std::stod(f.at(static_cast<std::size_t>(im))) : 0.0;
      pts.emplace_back(x, y);
    } catch (const std::exception&) {
      config_fail("bad number in '" + path + "'");
    }
  }
  if (pts.empty()) config_fail("'" + path + "' holds no points");
  return pts;
}

}  // namespace rmt::io
