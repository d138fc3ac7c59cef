#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "waveguide/error.hpp"
#include "waveguide/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kResourceRefusal = 3, kNumericalAbort = 4 };

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool timing = false;
};

int run(waveguide::ExperimentKind kind, const Options& opt) {
  using namespace waveguide;
  try {
    ExperimentConfig cfg = load_config(opt.config, kind);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.workers) cfg.workers = *opt.workers;
    if (opt.timing) cfg.timing = true;
    const SweepTable table = run_experiment(cfg);
    write_outputs(table, opt.out);
    std::cerr << table.rows.size() << " rows written to " << opt.out;
    if (table.failed_rows) std::cerr << " (" << table.failed_rows << " failed)";
    std::cerr << "\n";
    return table.numerical_aborts ? kNumericalAbort : kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ResourceRefusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kResourceRefusal;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kNumericalAbort;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral experiments on R^m x T^n_lambda"};
  app.require_subcommand(1);

  Options opt;
  std::optional<waveguide::ExperimentKind> chosen;
  for (auto kind : {waveguide::ExperimentKind::kBilinearSweep,
                    waveguide::ExperimentKind::kMeasureSweep,
                    waveguide::ExperimentKind::kExtremizer, waveguide::ExperimentKind::kImethod,
                    waveguide::ExperimentKind::kDecay}) {
    auto* sub = app.add_subcommand(waveguide::to_string(kind));
    sub->add_option("--config", opt.config, "JSON experiment config")->required();
    sub->add_option("--out", opt.out, "CSV output path")->required();
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", opt.timing, "fill the seconds column");
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  return run(*chosen, opt);
}
