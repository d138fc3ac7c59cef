#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waveguide/imethod.hpp"

namespace waveguide {

enum class ExperimentKind { kBilinearSweep, kMeasureSweep, kExtremizer, kImethod, kDecay };

std::string to_string(ExperimentKind kind);
// Throws ConfigError for unknown names.
ExperimentKind experiment_kind_from_string(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kBilinearSweep;

  int m = 1;
  int n = 1;
  std::optional<double> box_length;
  std::optional<int> grid_points;  // decay: real grid size

  std::vector<double> lambda;
  std::vector<double> N1;
  std::vector<double> N2;
  std::vector<double> T;
  std::vector<double> s;
  std::vector<double> alpha;  // empty: alpha = (1 - s)/s per s
  std::vector<int> k;
  std::vector<std::string> cases;  // extremizer families

  int draws = 5;
  std::optional<int> steps;  // time panels override
  double thickness = 1.0;
  IncrementDataSpec imethod;

  double max_cost = 1e11;
  std::uint64_t seed = 0;
  int workers = 1;
  bool timing = false;

  // Throws ConfigError describing the first problem found.
  void validate() const;
};

// Parses the JSON config text; `kind_hint` fills in a missing "experiment".
ExperimentConfig parse_config(const std::string& json_text,
                              std::optional<ExperimentKind> kind_hint = std::nullopt);
ExperimentConfig load_config(const std::string& path,
                             std::optional<ExperimentKind> kind_hint = std::nullopt);

struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string summary_json;
  int failed_rows = 0;
  int numerical_aborts = 0;
};

// Modeled work of the whole run, in the units of quadrature_cost.
double estimate_cost(const ExperimentConfig& config);

// Expands the grid, refuses with ResourceRefusal above config.max_cost, and
// evaluates cells on config.workers threads. Rows come back in grid order.
SweepTable run_experiment(const ExperimentConfig& config);

std::string to_csv(const SweepTable& table);
// Writes <out> and <out>.summary.json.
void write_outputs(const SweepTable& table, const std::string& out_path);

}  // namespace waveguide
