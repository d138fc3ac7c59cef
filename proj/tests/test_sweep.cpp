#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "waveguide/error.hpp"
#include "waveguide/sweep.hpp"

using namespace waveguide;
namespace fs = std::filesystem;

namespace {

const char* kMeasure = R"({
  "experiment": "measure-sweep",
  "grid": {"lambda": [1, 2], "N1": [4, 8], "N2": [2]},
  "draws": 100, "seed": 11
})";

const char* kBilinear = R"({
  "experiment": "bilinear-sweep",
  "grid": {"lambda": [1], "N1": [2, 4], "N2": [1, 2], "T": [0.25]},
  "draws": 2, "quadrature": {"steps": 32}, "seed": 5
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "waveguide_sweep_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(ConfigTest, Errors) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_config(R"({"grid": {}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "sweep"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "decay"})", ExperimentKind::kImethod), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "decay", "draws": "many"})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);

  auto empty = parse_config(R"({"experiment": "bilinear-sweep",
      "grid": {"lambda": [], "N1": [4], "N2": [2], "T": [1]}})");
  EXPECT_THROW(empty.validate(), ConfigError);
  EXPECT_THROW(run_experiment(empty), ConfigError);
  auto inverted = parse_config(R"({"experiment": "bilinear-sweep",
      "grid": {"lambda": [1], "N1": [2], "N2": [4], "T": [1]}})");
  EXPECT_THROW(inverted.validate(), ConfigError);
  auto open = parse_config(R"({"experiment": "bilinear-sweep", "geometry": {"m": 1, "n": 2},
      "grid": {"lambda": [1], "N1": [4], "N2": [2], "T": [1]}})");
  EXPECT_THROW(open.validate(), ConfigError);
  auto cases = parse_config(R"({"experiment": "extremizer",
      "grid": {"lambda": [2], "N1": [8], "N2": [1], "cases": ["torus-9d"]}})");
  EXPECT_THROW(cases.validate(), ConfigError);
}

TEST(ConfigTest, ParsesDefaultsAndHint) {
  const auto c = parse_config(R"({"grid": {"lambda": 4, "N": [8, 16], "s": [0.7], "k": [1]},
      "data": {"dt_coefficient": 0.01, "records": 8}})", ExperimentKind::kImethod);
  EXPECT_EQ(c.kind, ExperimentKind::kImethod);
  EXPECT_EQ(c.lambda, std::vector<double>{4});
  EXPECT_EQ(c.N1.size(), 2u);
  EXPECT_DOUBLE_EQ(c.imethod.dt_coefficient, 0.01);
  EXPECT_EQ(c.imethod.records, 8);
  EXPECT_EQ(c.workers, 1);
  EXPECT_EQ(experiment_kind_from_string("measure-sweep"), ExperimentKind::kMeasureSweep);
}

TEST(SweepTest, SmokeBilinearRow) {
  auto c = parse_config(R"({"experiment": "bilinear-sweep",
      "grid": {"lambda": [1], "N1": [4], "N2": [2], "T": [0.25]},
      "draws": 1, "quadrature": {"steps": 32}})");
  const SweepTable t = run_experiment(c);
  ASSERT_EQ(t.rows.size(), 1u);
  ASSERT_EQ(t.header.size(), 14u);
  EXPECT_EQ(t.header[12], "ratio");
  const double ratio = std::stod(t.rows[0][12]);
  EXPECT_GT(ratio, 0.0);
  EXPECT_TRUE(std::isfinite(ratio));
  EXPECT_EQ(t.rows[0][13], "");
  EXPECT_EQ(t.failed_rows, 0);
}

TEST(SweepTest, RowsInGridOrderAndSkipInvertedCells) {
  const SweepTable t = run_experiment(parse_config(kBilinear));
  // N1 >= N2 cells in grid order: (2,1), (2,2), (4,1), (4,2).
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0][4], "2");
  EXPECT_EQ(t.rows[3][4], "4");
  EXPECT_EQ(t.rows[3][5], "2");
  EXPECT_NE(t.summary_json.find("\"ratio\""), std::string::npos);
}

TEST(SweepTest, DeterministicAcrossRunsAndWorkers) {
  for (const char* text : {kMeasure, kBilinear}) {
    auto c = parse_config(text);
    const std::string a = to_csv(run_experiment(c));
    c.workers = 3;
    const SweepTable t = run_experiment(c);
    EXPECT_EQ(a, to_csv(t));
    const fs::path p1 = scratch("a.csv"), p2 = scratch("b.csv");
    write_outputs(t, p1.string());
    write_outputs(run_experiment(c), p2.string());
    EXPECT_EQ(slurp(p1), slurp(p2));
    EXPECT_EQ(slurp(p1.string() + ".summary.json"), slurp(p2.string() + ".summary.json"));
  }
}

TEST(SweepTest, SeedChangesRandomCells) {
  auto c = parse_config(kBilinear);
  const std::string a = to_csv(run_experiment(c));
  c.seed = 6;
  EXPECT_NE(a, to_csv(run_experiment(c)));
}

TEST(SweepTest, RefusesOverCeiling) {
  auto c = parse_config(kBilinear);
  const double cost = estimate_cost(c);
  EXPECT_GT(cost, 0.0);
  c.max_cost = cost / 2;
  try {
    run_experiment(c);
    FAIL();
  } catch (const ResourceRefusal& e) {
    EXPECT_DOUBLE_EQ(e.estimate(), cost);
  }
}

TEST(SweepTest, PerRowFailuresAreRecorded) {
  // N2 = 1 is off the lattice Z/2.5, so the second cell cannot be built.
  auto c = parse_config(R"({"experiment": "extremizer",
      "grid": {"lambda": [2, 2.5], "N1": [8], "N2": [1], "cases": ["torus-1d"]}})");
  const SweepTable t = run_experiment(c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.failed_rows, 1);
  EXPECT_NE(t.rows[0][13], "");
  EXPECT_EQ(t.rows[1][13], "");
  EXPECT_NE(t.summary_json.find("lattice"), std::string::npos);
}

#ifdef WAVEGUIDE_LAB_EXE
namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(WAVEGUIDE_LAB_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(CliTest, ExitCodesAndDigest) {
  const fs::path cfg = scratch("cli.json");
  std::ofstream(cfg) << kMeasure;
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << R"({"experiment": "measure-sweep", "grid": {"lambda": []}})";
  const fs::path out1 = scratch("cli1.csv"), out2 = scratch("cli2.csv");

  EXPECT_EQ(run_cli("measure-sweep --config " + cfg.string() + " --out " + out1.string()), 0);
  EXPECT_EQ(run_cli("measure-sweep --config " + cfg.string() + " --out " + out2.string() +
                    " --workers 2"),
            0);
  EXPECT_EQ(slurp(out1), slurp(out2));
  EXPECT_EQ(run_cli("measure-sweep --config " + bad.string() + " --out " + out1.string()), 2);
  EXPECT_EQ(run_cli("bilinear-sweep --config " + cfg.string() + " --out " + out1.string()), 2);
  EXPECT_EQ(run_cli("measure-sweep --out " + out1.string()), 2);

  const fs::path big = scratch("big.json");
  std::ofstream(big) << R"({"experiment": "bilinear-sweep",
      "grid": {"lambda": [64], "N1": [64], "N2": [8], "T": [64]}})";
  EXPECT_EQ(run_cli("bilinear-sweep --config " + big.string() + " --out " + out1.string()), 3);
}
#endif
