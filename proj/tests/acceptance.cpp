// rmt_acceptance: one pass/fail line per acceptance criterion.
//
//   rmt_acceptance <id> [--report-only] [--configs DIR] [--cli PATH]
//
// ids: 1 to 11, the sub-parts 6:<config>, 10:trace, 10:w2, 10:w2-fit and
// 10:w2-shape, or "all". Exit status is 0 iff every requested criterion passed; with
// --report-only the verdict is printed but the exit status is 0.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "rmtlab/checks.hpp"
#include "rmtlab/io.hpp"

#ifndef RMT_CONFIG_DIR
#define RMT_CONFIG_DIR "configs"
#endif
#ifndef RMT_CLI_PATH
#define RMT_CLI_PATH "rmt"
#endif
#ifndef RMT_ACCEPTANCE_LOG
#define RMT_ACCEPTANCE_LOG ""
#endif

using namespace rmt;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240101;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Options {
  std::string configs = RMT_CONFIG_DIR;
  std::string cli = RMT_CLI_PATH;
};

// ------------------------------------------------------------ criteria

Verdict c1_transport(const Options&) {
  const auto [ok, detail] = checks::transport_exactness(kSeed, 200);
  return {ok, detail};
}

Verdict c2_hoffman_wielandt(const Options&) {
  const auto l = hoffman_wielandt_check(kSeed, 500, 32);
  return {l.passed(), std::to_string(l.cases) + " pairs, max ratio " + fmt(l.max_ratio, 6) + ", violations " +
                          std::to_string(l.violations)};
}

Verdict ledger_verdict(const checks::Ledger& l) {
  std::size_t failed = 0;
  std::string first;
  for (const auto& c : l)
    if (!c.passed) {
      if (!failed) first = c.name + ": " + c.detail;
      ++failed;
    }
  if (failed) return {false, std::to_string(failed) + " of " + std::to_string(l.size()) + " checks failed, first " + first};
  return {true, std::to_string(l.size()) + " checks passed"};
}

Verdict c3_matcore(const Options&) { return ledger_verdict(checks::matcore_suite(kSeed, 200)); }

Verdict c4_dpp(const Options&) { return ledger_verdict(checks::dpp_suite()); }

Verdict c5_monte_carlo_vs_kernel(const Options&) {
  bool ok = true;
  std::string detail;
  for (auto which : {RigidityEnsemble::GUE, RigidityEnsemble::HaarU}) {
    const bool gue = which == RigidityEnsemble::GUE;
    const auto r = counting_tail_experiment(which, 50, gue ? 0.0 : kPi, 10000, kSeed);
    const bool pass = r.mean_z() <= 4.0 && r.variance_z() <= 4.0 && r.violations == 0;
    ok = ok && pass;
    detail += std::string(gue ? "GUE" : "Haar-U") + " mean z " + fmt(r.mean_z(), 3) + ", variance z " +
              fmt(r.variance_z(), 3) + ", envelope violations " + std::to_string(r.violations) + " of " +
              std::to_string(r.tail.size()) + "; ";
  }
  return {ok, detail};
}

const std::vector<std::string>& rate_configs() {
  static const std::vector<std::string> names{"gue", "haar-u", "wishart", "ginibre", "sum", "compression"};
  return names;
}

Verdict c6_rate(const Options& o, const std::string& name) {
  const auto path = (fs::path(o.configs) / (name + ".json")).string();
  const auto rc = io::parse_rates_config(io::read_json_file(path), std::nullopt);
  const auto rep = run_distance_scan(rc.experiment);
  if (!rep.fit) return {false, name + ": no fit"};
  const bool ok = !rc.window || rc.window->contains(rep.fit->slope);
  std::string win = "[" + (rc.window && rc.window->min ? fmt(*rc.window->min) : std::string("-inf")) + ", " +
                    (rc.window && rc.window->max ? fmt(*rc.window->max) : std::string("inf")) + "]";
  return {ok, name + " slope " + fmt(rep.fit->slope) + " +- " + fmt(rep.fit->stderr_slope, 2) + " window " + win};
}

Verdict c6_all(const Options& o) {
  bool ok = true;
  std::string detail;
  for (const auto& n : rate_configs()) {
    const auto v = c6_rate(o, n);
    ok = ok && v.pass;
    detail += v.detail + (v.pass ? "" : " (out)") + "; ";
  }
  return {ok, detail};
}

Verdict c7_powers(const Options&) {
  const std::vector<std::size_t> ms{1, 2, 4, 8, 16};
  const auto s = power_scan(Group::U, 256, ms, 40, kSeed);
  bool nondecreasing = true;
  double lo = INFINITY, hi = 0.0;
  std::string detail = "mean W2:";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i && s[i].mean_distance < s[i - 1].mean_distance) nondecreasing = false;
    const double ratio = s[i].mean_distance / std::sqrt(static_cast<double>(s[i].n));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    detail += " m=" + std::to_string(s[i].n) + " " + fmt(s[i].mean_distance);
  }
  detail += "; mean/sqrt(m) spread " + fmt(hi / lo, 3);
  return {nondecreasing && hi / lo < 3.0, detail};
}

Verdict c8_rains(const Options&) {
  bool ok = true;
  std::string detail;
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 2}, {12, 3}, {16, 4}}) {
    const auto r = rains_test(n, m, 5000, {kPi / 2, kPi, 3 * kPi / 2}, kSeed, 0.01);
    ok = ok && r.passed();
    double worst = 0.0;
    for (const auto& a : r.arcs) worst = std::max(worst, a.statistic / a.threshold);
    detail += "(" + std::to_string(n) + "," + std::to_string(m) + ") " + (r.passed() ? "accept" : "reject") +
              " max KS/threshold " + fmt(worst, 3) + "; ";
  }
  return {ok, detail};
}

Verdict c9_qsg(const Options&) {
  const auto lip = qsg_lipschitz_check(kSeed, 120, 3, 8);
  const std::vector<std::size_t> qubits{6, 7, 8, 9, 10, 11};
  const auto s = qsg_scan(qubits, 60, kSeed, 1.0);
  bool decreasing = true;
  std::string detail = "Lipschitz equality max |ratio-1| " + fmt(lip.max_ratio, 3) + " over " + std::to_string(lip.cases) +
                       " cases; mean W1 (scale-adjusted):";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i && !(s[i].adjusted < s[i - 1].adjusted)) decreasing = false;
    detail += " " + std::to_string(s[i].qubits) + ":" + fmt(s[i].adjusted) + "(" + fmt(s[i].stderr_adjusted, 2) + ")";
  }
  detail += "; plain means:";
  for (const auto& x : s) detail += " " + fmt(x.mean_distance);
  return {lip.passed() && decreasing, detail};
}

Verdict c10_trace(const Options&) {
  EnsembleSpec g;
  g.kind = EnsembleKind::GUE;
  const auto t = concentration_tail_experiment(g, Functional::Trace, 64, 2000, kSeed);
  const double ks = folded_normal_ks(t.values), band = stats::dkw_epsilon(2000, 0.01);
  return {ks <= band, "trace tail KS " + fmt(ks, 3) + " vs DKW band " + fmt(band, 3)};
}

TailEstimate w2_tail() {
  EnsembleSpec g;
  g.kind = EnsembleKind::GUE;
  return concentration_tail_experiment(g, Functional::WpToTarget, 64, 2000, kSeed);
}

std::string w2_detail(const TailEstimate& t) {
  return "W2 tail fitted c " + fmt(t.c, 3) + ", monotone " + (t.monotone() ? "yes" : "no") + ", curvature in t^2 " +
         fmt(t.curvature, 3) + " +- " + fmt(t.curvature_se, 2) + " (log-concave " + (t.log_concave() ? "yes" : "no") + ")";
}

Verdict c10_w2_fit(const Options&) {
  const auto t = w2_tail();
  return {t.c > 0.0 && t.monotone(), w2_detail(t)};
}

Verdict c10_w2_shape(const Options&) {
  const auto t = w2_tail();
  return {t.log_concave(), w2_detail(t)};
}

Verdict c10_w2(const Options&) {
  const auto t = w2_tail();
  return {t.c > 0.0 && t.monotone() && t.log_concave(), w2_detail(t)};
}

Verdict c10_all(const Options& o) {
  const auto a = c10_trace(o), b = c10_w2(o);
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict c11_repro(const Options& o) {
  const auto dir = fs::temp_directory_path() / "rmt-acceptance-repro";
  fs::remove_all(dir);
  const auto cfg = (fs::path(o.configs) / "repro.json").string();
  std::vector<std::string> rows;
  for (const char* run : {"a", "b"}) {
    const auto out = (dir / run).string();
    const int code = shell("'" + o.cli + "' rates '" + cfg + "' --out-dir '" + out + "' >/dev/null 2>&1");
    if (code != 0) return {false, std::string("run ") + run + " exited " + std::to_string(code)};
    rows.push_back(slurp(dir / run / "rows.csv"));
  }
  const bool same = !rows[0].empty() && rows[0] == rows[1];
  fs::remove_all(dir);
  return {same, "two CLI runs of repro.json: rows.csv " + std::to_string(rows[0].size()) + " bytes, " +
                    (same ? "byte-identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: rmt_acceptance <id|all> [--report-only] [--configs DIR] [--cli PATH]\n";
    return 2;
  }
  const std::string id = argv[1];
  Options o;
  bool report_only = false;
  for (int i = 2; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--report-only") report_only = true;
    else if (a == "--configs" && i + 1 < argc) o.configs = argv[++i];
    else if (a == "--cli" && i + 1 < argc) o.cli = argv[++i];
    else {
      std::cerr << "unknown argument " << a << "\n";
      return 2;
    }
  }

  std::vector<std::pair<std::string, std::function<Verdict(const Options&)>>> table{
      {"1", c1_transport}, {"2", c2_hoffman_wielandt}, {"3", c3_matcore}, {"4", c4_dpp},
      {"5", c5_monte_carlo_vs_kernel}, {"6", c6_all}, {"7", c7_powers}, {"8", c8_rains},
      {"9", c9_qsg}, {"10", c10_all}, {"11", c11_repro}};
  for (const auto& n : rate_configs()) table.emplace_back("6:" + n, [n](const Options& opt) { return c6_rate(opt, n); });
  table.emplace_back("10:trace", c10_trace);
  table.emplace_back("10:w2", c10_w2);
  table.emplace_back("10:w2-fit", c10_w2_fit);
  table.emplace_back("10:w2-shape", c10_w2_shape);

  std::vector<std::string> ids;
  if (id == "all")
    for (int c = 1; c <= 11; ++c) ids.push_back(std::to_string(c));
  else
    ids.push_back(id);

  bool all_pass = true;
  for (const auto& want : ids) {
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == want; });
    if (it == table.end()) {
      std::cerr << "unknown criterion " << want << "\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = it->second(o);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string line = "criterion " + want + ": " + (v.pass ? "PASS" : "FAIL") + "  " + v.detail + " [" +
                             fmt(secs, 3) + " s]" + (report_only ? " (report-only)" : "");
    std::cout << line << std::endl;
    if (*RMT_ACCEPTANCE_LOG) std::ofstream(RMT_ACCEPTANCE_LOG, std::ios::app) << line << "\n";
    all_pass = all_pass && v.pass;
  }
  return (all_pass || report_only) ? 0 : 1;
}
