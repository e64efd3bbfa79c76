#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef RMT_CLI_PATH
#error "RMT_CLI_PATH must name the rmt executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(RMT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count_data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t n = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++n;
  }
  return n;
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("rmt-cli-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, SampleRowsAndDeterminism) {
  const auto a = run("sample --ensemble gue --n 4 --reps 2 --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(count_data_rows(a.out), 8u);
  EXPECT_EQ(a.out.rfind("# config_hash=", 0), 0u);
  EXPECT_NE(a.out.find("rep,index,re,im"), std::string::npos);
  EXPECT_EQ(run("sample --ensemble gue --n 4 --reps 2 --seed 7").out, a.out);
  EXPECT_NE(run("sample --ensemble gue --n 4 --reps 2 --seed 7", "RMT_SEED=8").out, a.out);
}

TEST(Cli, SampleValidation) {
  EXPECT_EQ(run("sample --ensemble wishart --n 8 --m 4").code, 2);
  EXPECT_EQ(run("sample --ensemble martian --n 8").code, 2);
  EXPECT_EQ(run("sample --n notanumber").code, 2);
  EXPECT_EQ(run("sample --ensemble qsg --n 2").code, 2);
  EXPECT_EQ(run("sample --ensemble sum-u --n 6 --a signs --b zero").code, 0);
  EXPECT_EQ(run("sample --ensemble compression --n 6 --k 3").code, 0);
}

TEST(Cli, Law) {
  const auto r = run("law --law circle --n 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_data_rows(r.out), 4u);
  EXPECT_NE(r.out.find("circle,4,0,1\n"), std::string::npos);
  EXPECT_NE(r.out.find("circle,4,1,0\n"), std::string::npos);
  EXPECT_EQ(run("law --law mp --rho 3 --n 4").code, 2);
}

TEST(Cli, Dpp) {
  const auto r = run("dpp --family dyson --n 10 --x 3.14159265");
  ASSERT_EQ(r.code, 0);
  const auto line = r.out.substr(r.out.find("dyson,10,"));
  std::istringstream in(line);
  std::string fam, n, x, mean;
  std::getline(in, fam, ',');
  std::getline(in, n, ',');
  std::getline(in, x, ',');
  std::getline(in, mean, ',');
  EXPECT_NEAR(std::stod(mean), 5.0, 1e-6);
  EXPECT_EQ(run("dpp --family laguerre --n 3").code, 2);
}

TEST(Cli, Rigidity) {
  const auto r = run("rigidity --ensemble haar-u --n 64 --reps 50");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_data_rows(r.out), 64u);
  EXPECT_EQ(r.out.find(",-"), std::string::npos);
  EXPECT_EQ(run("rigidity --ensemble goe --n 8").code, 2);
}

TEST(Cli, Distance) {
  const auto d = scratch_dir("distance");
  write(d / "a.csv", "re\n0\n2\n");
  write(d / "b.csv", "re\n1\n3\n");
  auto r = run("distance --a " + (d / "a.csv").string() + " --b " + (d / "b.csv").string() + " --p 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sorted1d,1,1,0"), std::string::npos);
  write(d / "z.csv", "re\n0\n");
  r = run("distance --a " + (d / "z.csv").string() + " --law gaussian --p 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("quantile-quadrature,2,"), std::string::npos);
  EXPECT_EQ(run("distance --a " + (d / "missing.csv").string() + " --law gaussian").code, 2);
}

TEST(Cli, RatesOutputsAndReport) {
  const auto d = scratch_dir("rates");
  write(d / "cfg.json", R"({"schema_version": 1, "ensemble": {"kind": "gue"}, "sizes": [8, 16], "reps": 4, "seed": 3, "window": {"min": -5, "max": 5}})");
  ASSERT_EQ(run("rates " + (d / "cfg.json").string() + " --out-dir " + (d / "out").string()).code, 0);
  for (const char* f : {"rows.csv", "timings.csv", "summary.json"}) EXPECT_TRUE(fs::exists(d / "out" / f)) << f;
  EXPECT_EQ(count_data_rows(slurp(d / "out" / "rows.csv")), 8u);
  EXPECT_EQ(run("report " + (d / "out").string()).code, 0);
  const auto first = slurp(d / "out" / "rows.csv");
  ASSERT_EQ(run("rates " + (d / "cfg.json").string() + " --out-dir " + (d / "out2").string()).code, 0);
  EXPECT_EQ(slurp(d / "out2" / "rows.csv"), first);

  // tampering with the rows breaks the provenance check
  write(d / "out" / "rows.csv", "# config_hash=0000000000000000\n");
  EXPECT_EQ(run("report " + (d / "out").string()).code, 1);
}

TEST(Cli, RatesSingleSizeHasNullSlope) {
  const auto d = scratch_dir("single");
  write(d / "cfg.json", R"({"schema_version": 1, "ensemble": {"kind": "gue"}, "sizes": [8], "reps": 2})");
  ASSERT_EQ(run("rates " + (d / "cfg.json").string() + " --out-dir " + (d / "out").string()).code, 0);
  EXPECT_NE(slurp(d / "out" / "summary.json").find("\"slope\": null"), std::string::npos);
}

TEST(Cli, RatesConfigErrorsWriteNothing) {
  const auto d = scratch_dir("bad");
  write(d / "bad.json", "{ this is not json");
  EXPECT_EQ(run("rates " + (d / "bad.json").string() + " --out-dir " + (d / "out").string()).code, 2);
  EXPECT_FALSE(fs::exists(d / "out"));
  write(d / "unknown.json", R"({"schema_version": 1, "ensemble": {"kind": "gue"}, "sizes": [8], "colour": 1})");
  EXPECT_EQ(run("rates " + (d / "unknown.json").string() + " --out-dir " + (d / "out").string()).code, 2);
  EXPECT_FALSE(fs::exists(d / "out"));
}

TEST(Cli, RatesBudgetExhaustion) {
  const auto d = scratch_dir("budget");
  write(d / "cfg.json",
        R"({"schema_version": 1, "ensemble": {"kind": "gue"}, "sizes": [8, 300, 600], "reps": 3, "threads": 1, "budget_seconds": 1e-9})");
  EXPECT_EQ(run("rates " + (d / "cfg.json").string() + " --out-dir " + (d / "out").string()).code, 1);
  EXPECT_TRUE(fs::exists(d / "out" / "summary.json"));
  EXPECT_NE(slurp(d / "out" / "summary.json").find("\"budget_exhausted\": true"), std::string::npos);
}

TEST(Cli, Check) {
  const auto d = scratch_dir("check");
  EXPECT_EQ(run("check transport --ledger " + (d / "ledger.txt").string()).code, 0);
  const auto ledger = slurp(d / "ledger.txt");
  EXPECT_NE(ledger.find("PASS transport/"), std::string::npos);
  EXPECT_EQ(ledger.find("FAIL"), std::string::npos);
  EXPECT_EQ(run("check lipschitz").code, 0);
  EXPECT_EQ(run("check nonsense").code, 2);
}
