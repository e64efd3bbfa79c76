// rmt: command-line front end for rmtlab.
//
// Exit codes: 0 success, 1 runtime or assertion failure, 2 config error.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "rmtlab/checks.hpp"
#include "rmtlab/io.hpp"

namespace {

using rmt::io::json;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kConfig = 2;

/// Emits `content` to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    rmt::io::write_file(path, content);
}

struct EnsembleArgs {
  std::string name = "gue";
  std::size_t n = 8, m = 0, k = 0;
  double aspect = 0.0, alpha = 0.0;
  std::string entries = "gaussian", field = "complex", a = "signs", b = "equispaced";
  bool literal_goe = false;

  void add(CLI::App* app) {
    app->add_option("--ensemble", name, "gue, goe, wigner, wishart, haar-<group>, haar-power-<group>, sum-<group>, compression, qsg, ginibre");
    app->add_option("--n", n, "dimension (qubits for qsg)");
    app->add_option("--m", m, "Wishart rows or power exponent");
    app->add_option("--aspect", aspect, "Wishart n/m");
    app->add_option("--k", k, "compression rank");
    app->add_option("--alpha", alpha, "compression k/n");
    app->add_option("--entries", entries, "gaussian or uniform");
    app->add_option("--field", field, "real or complex (Wishart)");
    app->add_option("--a", a, "ingredient A: signs, equispaced, zero");
    app->add_option("--b", b, "ingredient B: signs, equispaced, zero");
    app->add_flag("--paper-literal-goe", literal_goe, "GOE variances as printed in the source text");
  }

  json to_json() const {
    json j{{"kind", name}, {"n", n}, {"entries", entries}, {"field", field}, {"a", a}, {"b", b}, {"paper_literal_goe", literal_goe}};
    std::string kind = name;
    std::string group;
    // sum-<group> and compression-<group> pick the Haar factor's group
    for (const std::string base : {"sum", "compression"})
      if (name.rfind(base + "-", 0) == 0) {
        kind = base;
        group = name.substr(base.size() + 1);
      }
    j["kind"] = kind;
    if (!group.empty()) j["group"] = group;
    if (m) j["m"] = m;
    if (aspect > 0) j["aspect"] = aspect;
    if (k) j["k"] = k;
    if (alpha > 0) j["alpha"] = alpha;
    return j;
  }

  rmt::EnsembleSpec spec() const {
    auto e = rmt::io::parse_ensemble(to_json());
    e = e.at_size(n);
    try {
      e.validate();
    } catch (const rmt::Error& err) {
      rmt::io::config_fail(err.what());
    }
    return e;
  }
};

std::uint64_t effective_seed(std::uint64_t seed, std::string& source) {
  source = "cli";
  if (auto s = rmt::io::env_seed()) {
    source = "RMT_SEED";
    return *s;
  }
  return seed;
}

// --------------------------------------------------------------- commands

int cmd_sample(const EnsembleArgs& ea, std::size_t reps, std::uint64_t seed_arg, const std::string& out,
               const std::string& matrix_out) {
  const auto spec = ea.spec();
  if (reps < 1) rmt::io::config_fail("reps must be >= 1");
  std::string source;
  const std::uint64_t seed = effective_seed(seed_arg, source);
  json cfg{{"command", "sample"}, {"ensemble", ea.to_json()}, {"reps", reps}, {"seed", seed}};
  const std::string hash = rmt::io::config_hash(cfg);
  std::string csv = rmt::io::hash_line(hash) + "rep,index,re,im\n";
  std::string mcsv;
  if (!matrix_out.empty()) mcsv = rmt::io::hash_line(hash);
  for (std::size_t r = 0; r < reps; ++r) {
    auto rng = rmt::stream_for(seed, spec, r);
    const rmt::ComplexMatrix mat = rmt::sample_matrix(spec, rng);
    const auto mu = rmt::spectral_measure(mat, spec.hermitian() ? rmt::SpectrumPath::Hermitian : rmt::SpectrumPath::General);
    for (std::size_t j = 0; j < mu.size(); ++j)
      csv += std::to_string(r) + "," + std::to_string(j) + "," + rmt::io::num(mu.atoms()[j].real()) + "," +
             rmt::io::num(mu.atoms()[j].imag()) + "\n";
    if (!matrix_out.empty()) {
      // one CSV row per matrix row, entries as re+imi
      mcsv += "# rep=" + std::to_string(r) + "\n";
      for (Eigen::Index i = 0; i < mat.rows(); ++i) {
        for (Eigen::Index c = 0; c < mat.cols(); ++c) {
          const auto v = mat(i, c);
          mcsv += (c ? "," : "") + rmt::io::num(v.real()) + (v.imag() < 0 || std::signbit(v.imag()) ? "" : "+") +
                  rmt::io::num(v.imag()) + "i";
        }
        mcsv += "\n";
      }
    }
  }
  emit(out, csv);
  if (!matrix_out.empty()) rmt::io::write_file(matrix_out, mcsv);
  return kOk;
}

int cmd_law(const std::string& name, double rho, std::size_t n, const std::string& out) {
  const auto law = rmt::io::make_law(name, rho);
  if (n < 1) rmt::io::config_fail("n must be >= 1");
  json cfg{{"command", "law"}, {"law", name}, {"rho", rho}, {"n", n}};
  std::string csv = rmt::io::hash_line(rmt::io::config_hash(cfg)) + "law,n,atom_re,atom_im\n";
  for (auto z : rmt::discretize_law(law, n).atoms())
    csv += law.name() + "," + std::to_string(n) + "," + rmt::io::num(z.real()) + "," + rmt::io::num(z.imag()) + "\n";
  emit(out, csv);
  return kOk;
}

int cmd_dpp(const std::string& family, std::size_t n, const std::vector<double>& xs, const std::vector<double>& ts,
            const std::string& out, const std::string& tail_out) {
  rmt::KernelSpec k;
  if (family == "hermite")
    k.family = rmt::KernelFamily::HermiteGUE;
  else if (family == "dyson")
    k.family = rmt::KernelFamily::DysonCircle;
  else if (family == "ginibre")
    k.family = rmt::KernelFamily::Ginibre;
  else
    rmt::io::config_fail("unknown kernel family '" + family + "'");
  if (n < 1) rmt::io::config_fail("n must be >= 1");
  k.n = n;
  json cfg{{"command", "dpp"}, {"family", family}, {"n", n}, {"x", xs}, {"t", ts}};
  const std::string hash = rmt::io::config_hash(cfg);
  std::string csv = rmt::io::hash_line(hash) + "family,n,x,mean,variance\n";
  std::string tails = rmt::io::hash_line(hash) + "family,n,x,t,bernstein\n";
  for (double x : xs) {
    const auto st = rmt::counting_stats(k, x);
    csv += family + "," + std::to_string(n) + "," + rmt::io::num(x) + "," + rmt::io::num(st.mean) + "," +
           rmt::io::num(st.variance) + "\n";
    for (double t : ts)
      tails += family + "," + std::to_string(n) + "," + rmt::io::num(x) + "," + rmt::io::num(t) + "," +
               rmt::io::num(rmt::bernstein_tail(std::max(0.0, st.variance), t)) + "\n";
  }
  emit(out, csv);
  if (!tail_out.empty()) rmt::io::write_file(tail_out, tails);
  return kOk;
}

int cmd_distance(const std::string& a_path, const std::string& b_path, const std::string& law_name, double rho, double p,
                 const std::string& out) {
  if (b_path.empty() == law_name.empty()) rmt::io::config_fail("give exactly one of --b or --law");
  if (!(p >= 1.0)) rmt::io::config_fail("p must be >= 1");
  const auto a = rmt::io::read_points_csv(a_path);
  json cfg{{"command", "distance"}, {"a", a_path}, {"b", b_path}, {"law", law_name}, {"rho", rho}, {"p", p}};
  std::string csv = rmt::io::hash_line(rmt::io::config_hash(cfg)) + "method,p,distance,tail_bound\n";
  auto real_only = [](const std::vector<rmt::cplx>& z) {
    return std::all_of(z.begin(), z.end(), [](rmt::cplx v) { return v.imag() == 0.0; });
  };
  auto reals = [](const std::vector<rmt::cplx>& z) {
    std::vector<double> r;
    for (auto v : z) r.push_back(v.real());
    return r;
  };
  std::string method;
  double d = 0.0, tail = 0.0;
  if (!b_path.empty()) {
    const auto b = rmt::io::read_points_csv(b_path);
    if (real_only(a) && real_only(b)) {
      if (a.size() == b.size()) {
        d = rmt::wp_sorted_1d(reals(a), reals(b), p).distance;
        method = "sorted1d";
      } else {
        d = rmt::wp_quantile_1d(reals(a), reals(b), p);
        method = "quantile1d";
      }
    } else {
      if (a.size() != b.size()) rmt::io::config_fail("planar inputs need equal atom counts");
      d = rmt::wp_assignment_plane(a, b, p).distance;
      method = "assignment";
    }
  } else {
    const auto law = rmt::io::make_law(law_name, rho);
    if (law.scalar()) {
      if (!real_only(a)) rmt::io::config_fail("scalar law needs real atoms");
      if (p > 2.0) rmt::io::config_fail("distance to a law needs p in [1, 2]");
      d = rmt::wp_quantile_vs_law(reals(a), law, p).distance;
      method = "quantile-quadrature";
    } else {
      const auto pd = rmt::wp_to_planar_law(a, law, p);
      d = pd.exact_to_discretization.distance;
      tail = pd.analytic_tail;
      method = "triangle-bound";
    }
  }
  csv += method + "," + rmt::io::num(p) + "," + rmt::io::num(d) + "," + rmt::io::num(tail) + "\n";
  emit(out, csv);
  return kOk;
}

int cmd_rates(const std::string& config_path, const std::string& out_dir) {
  const auto rc = rmt::io::parse_rates_config(rmt::io::read_json_file(config_path), rmt::io::env_seed());
  fs::create_directories(out_dir);
  const auto report = rmt::run_distance_scan(rc.experiment);
  rmt::io::write_file((fs::path(out_dir) / "rows.csv").string(), rmt::io::rates_rows_csv(report, rc.hash));
  rmt::io::write_file((fs::path(out_dir) / "timings.csv").string(), rmt::io::rates_timings_csv(report, rc.hash));
  const json summary = rmt::io::rates_summary(report, rc);
  rmt::io::write_file((fs::path(out_dir) / "summary.json").string(), summary.dump(2) + "\n");
  std::cout << "ensemble " << report.ensemble << ", target " << report.target << "\n";
  for (const auto& s : report.sizes)
    std::cout << "  n=" << s.n << "  mean W=" << rmt::io::num(s.mean_distance) << "  se=" << rmt::io::num(s.stderr_distance) << "\n";
  if (report.fit) std::cout << "  slope " << report.fit->slope << " +- " << report.fit->stderr_slope << "\n";
  else std::cout << "  slope: none (single size)\n";
  if (report.budget_exhausted) {
    std::cerr << "budget exhausted; partial results written\n";
    return kRuntime;
  }
  if (rc.window && report.fit && !rc.window->contains(report.fit->slope)) {
    std::cerr << "slope outside the configured window\n";
    return kRuntime;
  }
  return kOk;
}

int cmd_rigidity(const std::string& ensemble, std::size_t n, std::size_t reps, std::uint64_t seed_arg, const std::string& out) {
  rmt::RigidityEnsemble which;
  if (ensemble == "gue")
    which = rmt::RigidityEnsemble::GUE;
  else if (ensemble == "haar-u")
    which = rmt::RigidityEnsemble::HaarU;
  else
    rmt::io::config_fail("rigidity supports gue and haar-u");
  if (n < 1 || n > 1024) rmt::io::config_fail("rigidity needs 1 <= n <= 1024");
  if (reps < 1) rmt::io::config_fail("reps must be >= 1");
  std::string source;
  const std::uint64_t seed = effective_seed(seed_arg, source);
  json cfg{{"command", "rigidity"}, {"ensemble", ensemble}, {"n", n}, {"reps", reps}, {"seed", seed}};
  const auto prof = rmt::rigidity_profile(which, n, reps, seed);
  std::string csv = rmt::io::hash_line(rmt::io::config_hash(cfg)) + "n,j,msd\n";
  for (std::size_t j = 0; j < n; ++j) csv += std::to_string(n) + "," + std::to_string(j + 1) + "," + rmt::io::num(prof.msd[j]) + "\n";
  emit(out, csv);
  std::cerr << "bulk mean squared deviation " << rmt::io::num(prof.bulk) << "\n";
  return kOk;
}

int cmd_check(const std::string& suite, std::uint64_t seed, const std::string& ledger_path) {
  const auto& names = rmt::checks::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) rmt::io::config_fail("unknown suite '" + suite + "'");
  const auto ledger = rmt::checks::run_suite(suite, seed);
  std::string text;
  for (const auto& c : ledger) {
    const std::string line = std::string(c.passed ? "PASS " : "FAIL ") + c.suite + "/" + c.name + ": " + c.detail + "\n";
    std::cout << line;
    text += line;
  }
  if (!ledger_path.empty()) rmt::io::write_file(ledger_path, text);
  return rmt::checks::all_passed(ledger) ? kOk : kRuntime;
}

/// Summarizes a rates output directory and checks that the hashes of its
/// files agree with the provenance block.
int cmd_report(const std::string& dir) {
  const auto summary_path = fs::path(dir) / "summary.json";
  if (!fs::exists(summary_path)) rmt::io::config_fail("no summary.json in '" + dir + "'");
  json s;
  try {
    s = json::parse(rmt::io::read_file(summary_path.string()));
  } catch (const json::parse_error& e) {
    rmt::io::config_fail(std::string("malformed summary.json: ") + e.what());
  }
  if (!s.contains("provenance") || !s["provenance"].contains("config_hash"))
    rmt::io::config_fail("summary.json lacks a provenance block");
  const std::string hash = s["provenance"]["config_hash"].get<std::string>();
  bool consistent = true;
  if (!s.contains("config") || rmt::io::config_hash(s["config"]) != hash) {
    std::cout << "summary.json: recomputed config hash does not match\n";
    consistent = false;
  }
  for (const char* f : {"rows.csv", "timings.csv"}) {
    const auto p = fs::path(dir) / f;
    const auto h = fs::exists(p) ? rmt::io::csv_hash(rmt::io::read_file(p.string())) : std::nullopt;
    if (!h || *h != hash) {
      std::cout << f << ": hash mismatch or missing\n";
      consistent = false;
    }
  }
  std::cout << "ensemble " << s.value("ensemble", "?") << "  target " << s.value("target", "?") << "  hash " << hash << "\n";
  for (const auto& row : s["sizes"])
    std::cout << "  n=" << row["n"] << "  mean=" << row["mean_distance"] << "  se=" << row["stderr_distance"] << "\n";
  std::cout << "  slope " << s["slope"].dump() << "  stderr " << s["stderr"].dump() << "\n";
  if (s.contains("window")) std::cout << "  window verdict " << s["window"]["verdict"].dump() << "\n";
  return consistent ? kOk : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmt: random matrix spectra, limiting laws and Wasserstein rates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RMTLAB_VERSION);

  EnsembleArgs sample_args;
  std::size_t sample_reps = 1;
  std::uint64_t sample_seed = 1;
  std::string sample_out, sample_matrix;
  auto* sample = app.add_subcommand("sample", "sample spectra of an ensemble");
  sample_args.add(sample);
  sample->add_option("--reps", sample_reps, "number of draws");
  sample->add_option("--seed", sample_seed, "master seed");
  sample->add_option("--out", sample_out, "eigenvalue CSV (default stdout)");
  sample->add_option("--matrix-out", sample_matrix, "optional matrix dump CSV");

  std::string law_name = "semicircle", law_out;
  double law_rho = 1.0;
  std::size_t law_n = 8;
  auto* law = app.add_subcommand("law", "discretize a limit law");
  law->add_option("--law", law_name, "semicircle, mp, circle, disc, gaussian");
  law->add_option("--rho", law_rho, "Marchenko-Pastur ratio");
  law->add_option("--n", law_n, "number of atoms");
  law->add_option("--out", law_out, "CSV path (default stdout)");

  std::string dpp_family = "dyson", dpp_out, dpp_tail;
  std::size_t dpp_n = 10;
  std::vector<double> dpp_x{rmt::kPi}, dpp_t{1.0, 2.0, 4.0};
  auto* dpp = app.add_subcommand("dpp", "counting statistics of a determinantal kernel");
  dpp->add_option("--family", dpp_family, "hermite, dyson, ginibre");
  dpp->add_option("--n", dpp_n, "kernel rank");
  dpp->add_option("--x", dpp_x, "evaluation points (kernel coordinates; radius for ginibre)")->delimiter(',');
  dpp->add_option("--t", dpp_t, "Bernstein grid")->delimiter(',');
  dpp->add_option("--out", dpp_out, "CSV path (default stdout)");
  dpp->add_option("--tail-out", dpp_tail, "Bernstein envelope CSV");

  std::string dist_a, dist_b, dist_law, dist_out;
  double dist_rho = 1.0, dist_p = 2.0;
  auto* distance = app.add_subcommand("distance", "Wasserstein distance between point sets or to a law");
  distance->add_option("--a", dist_a, "CSV with re[,im] columns")->required();
  distance->add_option("--b", dist_b, "second CSV");
  distance->add_option("--law", dist_law, "target law");
  distance->add_option("--rho", dist_rho, "Marchenko-Pastur ratio");
  distance->add_option("--p", dist_p, "exponent");
  distance->add_option("--out", dist_out, "CSV path (default stdout)");

  std::string rates_cfg, rates_dir = "rates-out";
  auto* rates = app.add_subcommand("rates", "distance scan and log-log rate fit from a JSON config");
  rates->add_option("config", rates_cfg, "JSON config")->required();
  rates->add_option("--out-dir", rates_dir, "output directory");

  std::string rig_ens = "haar-u", rig_out;
  std::size_t rig_n = 64, rig_reps = 50;
  std::uint64_t rig_seed = 1;
  auto* rigidity = app.add_subcommand("rigidity", "per-index eigenvalue rigidity profile");
  rigidity->add_option("--ensemble", rig_ens, "gue or haar-u");
  rigidity->add_option("--n", rig_n, "dimension");
  rigidity->add_option("--reps", rig_reps, "draws");
  rigidity->add_option("--seed", rig_seed, "master seed");
  rigidity->add_option("--out", rig_out, "CSV path (default stdout)");

  std::string check_suite, check_ledger;
  std::uint64_t check_seed = 1;
  auto* check = app.add_subcommand("check", "run an invariant suite");
  check->add_option("suite", check_suite, "transport, lipschitz, dpp, matcore, limits")->required();
  check->add_option("--seed", check_seed, "suite seed");
  check->add_option("--ledger", check_ledger, "write the pass/fail ledger here");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "summarize a rates output directory");
  report->add_option("dir", report_dir, "directory holding summary.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sample) return cmd_sample(sample_args, sample_reps, sample_seed, sample_out, sample_matrix);
    if (*law) return cmd_law(law_name, law_rho, law_n, law_out);
    if (*dpp) return cmd_dpp(dpp_family, dpp_n, dpp_x, dpp_t, dpp_out, dpp_tail);
    if (*distance) return cmd_distance(dist_a, dist_b, dist_law, dist_rho, dist_p, dist_out);
    if (*rates) return cmd_rates(rates_cfg, rates_dir);
    if (*rigidity) return cmd_rigidity(rig_ens, rig_n, rig_reps, rig_seed, rig_out);
    if (*check) return cmd_check(check_suite, check_seed, check_ledger);
    if (*report) return cmd_report(report_dir);
  } catch (const rmt::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}
