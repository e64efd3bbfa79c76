#include <gtest/gtest.h>

#include "rmtlab/io.hpp"

using namespace rmt;
using io::json;

namespace {

json base_config() {
  return json::parse(R"({"schema_version": 1, "ensemble": {"kind": "gue"}, "sizes": [8, 16], "reps": 3, "seed": 5})");
}

}  // namespace

TEST(Config, ParsesDefaults) {
  const auto rc = io::parse_rates_config(base_config(), std::nullopt);
  EXPECT_EQ(rc.experiment.ensemble.kind, EnsembleKind::GUE);
  EXPECT_EQ(rc.experiment.sizes, (std::vector<std::size_t>{8, 16}));
  EXPECT_EQ(rc.experiment.reps, 3u);
  EXPECT_EQ(rc.experiment.p, 2.0);
  EXPECT_EQ(rc.experiment.seed, 5u);
  EXPECT_EQ(rc.seed_source, "config");
  EXPECT_FALSE(rc.window.has_value());
}

TEST(Config, RejectsUnknownKeys) {
  auto j = base_config();
  j["colour"] = "red";
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
  j = base_config();
  j["ensemble"]["flavour"] = 1;
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
  j = base_config();
  j["window"] = {{"min", -1.0}, {"mid", 0.0}};
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
}

TEST(Config, FuzzedKeysAreRejected) {
  const std::vector<std::string> keys{"schema_version", "ensemble", "sizes", "reps", "p", "target", "law",
                                      "seed", "threads", "budget_seconds", "pool_reps", "window"};
  RngStream rng(1, "fuzz", 0, 0);
  for (int i = 0; i < 200; ++i) {
    auto j = base_config();
    std::string key = keys[rng() % keys.size()];
    const std::size_t pos = rng() % key.size();
    key[pos] = static_cast<char>('a' + rng() % 26);
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    j[key] = 1;
    EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError) << key;
  }
}

TEST(Config, SchemaVersionAndTypes) {
  auto j = base_config();
  j["schema_version"] = 2;
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
  j.erase("schema_version");
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
  j = base_config();
  j["reps"] = "many";
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
  j = base_config();
  j["sizes"] = json::array({16, 8});
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
  j = base_config();
  j["ensemble"] = {{"kind", "wishart"}, {"m", 4}};
  EXPECT_THROW(io::parse_rates_config(j, std::nullopt), io::ConfigError);
}

TEST(Config, EnvSeedOverridesAndChangesHash) {
  const auto a = io::parse_rates_config(base_config(), std::nullopt);
  const auto b = io::parse_rates_config(base_config(), 77);
  EXPECT_EQ(b.experiment.seed, 77u);
  EXPECT_EQ(b.seed_source, "RMT_SEED");
  EXPECT_NE(a.hash, b.hash);
  EXPECT_EQ(a.hash, io::parse_rates_config(base_config(), std::nullopt).hash);
}

TEST(Config, EnsembleNames) {
  EXPECT_EQ(io::parse_ensemble(json{{"kind", "haar-u"}}).group, Group::U);
  const auto hp = io::parse_ensemble(json{{"kind", "haar-power-u"}, {"m", 3}});
  EXPECT_EQ(hp.kind, EnsembleKind::HaarPower);
  EXPECT_EQ(hp.m, 3u);
  const auto w = io::parse_ensemble(json{{"kind", "wishart"}, {"aspect", 0.5}});
  EXPECT_EQ(w.at_size(64).m, 128u);
  EXPECT_THROW(io::parse_ensemble(json{{"kind", "martian"}}), io::ConfigError);
}

TEST(Config, Laws) {
  EXPECT_EQ(io::parse_law(json("semicircle")).tag, LawTag::Semicircle);
  const auto mp = io::parse_law(json{{"name", "mp"}, {"rho", 0.5}});
  EXPECT_EQ(mp.tag, LawTag::MarchenkoPastur);
  EXPECT_EQ(mp.rho, 0.5);
  EXPECT_THROW(io::parse_law(json{{"name", "mp"}, {"rho", 2.0}}), io::ConfigError);
}

TEST(Output, RowsAreDeterministicAndCarryHash) {
  const auto rc = io::parse_rates_config(base_config(), std::nullopt);
  const auto r1 = run_distance_scan(rc.experiment);
  const auto r2 = run_distance_scan(rc.experiment);
  const auto c1 = io::rates_rows_csv(r1, rc.hash);
  EXPECT_EQ(c1, io::rates_rows_csv(r2, rc.hash));
  EXPECT_EQ(io::csv_hash(c1), rc.hash);
  EXPECT_NE(c1.find("ensemble,n,rep,p,distance,tail_bound\n"), std::string::npos);
  EXPECT_EQ(io::csv_hash(io::rates_timings_csv(r1, rc.hash)), rc.hash);
}

TEST(Output, SummaryFields) {
  auto j = base_config();
  j["window"] = {{"min", -5.0}, {"max", 5.0}};
  const auto rc = io::parse_rates_config(j, std::nullopt);
  const auto s = io::rates_summary(run_distance_scan(rc.experiment), rc);
  EXPECT_TRUE(s["slope"].is_number());
  EXPECT_EQ(s["window"]["verdict"], "pass");
  EXPECT_EQ(s["provenance"]["config_hash"], rc.hash);
  EXPECT_EQ(io::config_hash(s["config"]), rc.hash);

  j = base_config();
  j["sizes"] = json::array({8});
  const auto rc1 = io::parse_rates_config(j, std::nullopt);
  EXPECT_TRUE(io::rates_summary(run_distance_scan(rc1.experiment), rc1)["slope"].is_null());
}

TEST(Output, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567})
    EXPECT_EQ(std::stod(io::num(v)), v);
}
