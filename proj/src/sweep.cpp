#include "waveguide/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "waveguide/bilinear.hpp"
#include "waveguide/counting.hpp"
#include "waveguide/error.hpp"
#include "waveguide/extremizers.hpp"
#include "waveguide/fit.hpp"
#include "waveguide/geometry.hpp"
#include "waveguide/random.hpp"

namespace waveguide {

using ordered_json = nlohmann::ordered_json;

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kBilinearSweep: return "bilinear-sweep";
    case ExperimentKind::kMeasureSweep: return "measure-sweep";
    case ExperimentKind::kExtremizer: return "extremizer";
    case ExperimentKind::kImethod: return "imethod";
    case ExperimentKind::kDecay: return "decay";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::kBilinearSweep, ExperimentKind::kMeasureSweep,
                 ExperimentKind::kExtremizer, ExperimentKind::kImethod,
                 ExperimentKind::kDecay}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown experiment kind '" + name + "'");
}

namespace {

bool is_dyadic(double v) {
  if (!(v >= 1.0)) return false;
  int e = 0;
  return std::frexp(v, &e) == 0.5;
}

std::vector<std::pair<double, double>> scale_pairs(const ExperimentConfig& c) {
  std::vector<std::pair<double, double>> out;
  for (double n2 : c.N2) {
    for (double n1 : c.N1) {
      if (n1 >= n2) out.emplace_back(n1, n2);
    }
  }
  return out;
}

void require_nonempty(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw ConfigError(std::string("grid '") + name + "' is empty");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(max_cost > 0.0)) throw ConfigError("max_cost must be positive");
  auto check_scales = [&] {
    require_nonempty(lambda, "lambda");
    require_nonempty(N1, "N1");
    require_nonempty(N2, "N2");
    for (double l : lambda) {
      if (!(l > 0.0)) throw ConfigError("lambda values must be positive");
    }
    for (const auto* v : {&N1, &N2}) {
      for (double x : *v) {
        if (!is_dyadic(x)) throw ConfigError("N1/N2 values must be powers of two >= 1");
      }
    }
    if (scale_pairs(*this).empty()) throw ConfigError("no grid cell satisfies N1 >= N2");
  };
  switch (kind) {
    case ExperimentKind::kBilinearSweep:
      check_scales();
      require_nonempty(T, "T");
      for (double t : T) {
        if (!(t > 0.0)) throw ConfigError("T values must be positive");
      }
      if (draws < 1) throw ConfigError("draws must be >= 1");
      if (steps && *steps < 16) throw ConfigError("steps must be >= 16");
      if (box_length && !(*box_length > 0.0)) throw ConfigError("box_length must be positive");
      if (!((m == 1 && n == 1) || (m >= 2 && n >= 1))) {
        throw ConfigError("bilinear-sweep supports (m, n) = (1, 1) or m >= 2, n >= 1");
      }
      break;
    case ExperimentKind::kMeasureSweep:
      check_scales();
      if (draws < 100) throw ConfigError("measure-sweep needs draws >= 100");
      if (!(thickness > 0.0)) throw ConfigError("thickness must be positive");
      break;
    case ExperimentKind::kExtremizer:
      check_scales();
      if (cases.empty()) throw ConfigError("grid 'cases' is empty");
      for (const auto& name : cases) {
        try {
          extremizer_kind_from_string(name);
        } catch (const PreconditionError& e) {
          throw ConfigError(e.what());
        }
      }
      break;
    case ExperimentKind::kImethod:
      require_nonempty(s, "s");
      require_nonempty(N1, "N");
      if (k.empty()) throw ConfigError("grid 'k' is empty");
      for (double v : s) {
        if (!(v > 0.0 && v <= 1.0)) throw ConfigError("s values must lie in (0, 1]");
      }
      for (int v : k) {
        if (v < 1) throw ConfigError("k values must be >= 1");
      }
      if (!(imethod.dt_coefficient > 0.0) || !(imethod.horizon > 0.0)) {
        throw ConfigError("imethod dt_coefficient and horizon must be positive");
      }
      break;
    case ExperimentKind::kDecay:
      require_nonempty(T, "T");
      if (T.size() < 3) throw ConfigError("decay needs at least 3 horizons");
      if (!std::is_sorted(T.begin(), T.end()) || T.front() <= 0.0) {
        throw ConfigError("decay horizons must be positive and increasing");
      }
      break;
  }
}

namespace {

template <class T>
std::vector<T> read_list(const ordered_json& j, const char* key) {
  std::vector<T> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<T>());
  } else {
    out.push_back(v.get<T>());
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              std::optional<ExperimentKind> kind_hint) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  try {
    if (j.contains("experiment")) {
      c.kind = experiment_kind_from_string(j.at("experiment").get<std::string>());
      if (kind_hint && *kind_hint != c.kind) {
        throw ConfigError("config describes '" + to_string(c.kind) +
                          "' but the subcommand is '" + to_string(*kind_hint) + "'");
      }
    } else if (kind_hint) {
      c.kind = *kind_hint;
    } else {
      throw ConfigError("config has no 'experiment' entry");
    }
    const ordered_json empty = ordered_json::object();
    const auto& geo = j.contains("geometry") ? j.at("geometry") : empty;
    c.m = geo.value("m", c.m);
    c.n = geo.value("n", c.n);
    if (geo.contains("box_length")) c.box_length = geo.at("box_length").get<double>();
    if (geo.contains("grid_points")) c.grid_points = geo.at("grid_points").get<int>();

    const auto& grid = j.contains("grid") ? j.at("grid") : empty;
    c.lambda = read_list<double>(grid, "lambda");
    c.N1 = read_list<double>(grid, "N1");
    if (c.N1.empty()) c.N1 = read_list<double>(grid, "N");
    c.N2 = read_list<double>(grid, "N2");
    c.T = read_list<double>(grid, "T");
    c.s = read_list<double>(grid, "s");
    c.alpha = read_list<double>(grid, "alpha");
    c.k = read_list<int>(grid, "k");
    c.cases = read_list<std::string>(grid, "cases");

    c.draws = j.value("draws", c.draws);
    c.thickness = j.value("thickness", c.thickness);
    if (j.contains("quadrature") && j.at("quadrature").contains("steps")) {
      c.steps = j.at("quadrature").at("steps").get<int>();
    }
    if (j.contains("data")) {
      const auto& d = j.at("data");
      c.imethod.band_factor = d.value("band_factor", c.imethod.band_factor);
      c.imethod.dt_coefficient = d.value("dt_coefficient", c.imethod.dt_coefficient);
      c.imethod.horizon = d.value("horizon", c.imethod.horizon);
      c.imethod.records = d.value("records", c.imethod.records);
      c.imethod.coupling = d.value("coupling", c.imethod.coupling);
    }
    if (j.contains("resources")) c.max_cost = j.at("resources").value("max_cost", c.max_cost);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.timing = j.value("timing", c.timing);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path,
                             std::optional<ExperimentKind> kind_hint) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), kind_hint);
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string par(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Measured {
  std::vector<std::string> cells;
  std::vector<double> values;
};

struct Cell {
  std::vector<std::string> params;
  std::vector<double> key;
  int width = 0;
  double cost = 0.0;
  std::function<std::vector<Measured>()> run;
};

struct CellOutcome {
  std::vector<Measured> rows;
  std::string error;
  bool numerical = false;
  double seconds = 0.0;
};

int next_power_of_two(double v) {
  int p = 4;
  while (p <= v) p *= 2;
  return p;
}

Geometry bilinear_geometry(const ExperimentConfig& c, double lambda, double N1, double N2) {
  const double L = c.box_length ? *c.box_length : lambda;
  std::vector<int> pts;
  for (int dir = 0; dir < c.m + c.n; ++dir) {
    const double circ = dir < c.m ? L : lambda;
    const double ext = std::floor(2 * N1 * circ) + std::floor(2 * N2 * circ);
    pts.push_back(next_power_of_two(2 * ext));
  }
  return Geometry(c.m, c.n, lambda, L, pts);
}

std::vector<Cell> bilinear_cells(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  std::uint64_t index = 0;
  for (double lambda : c.lambda) {
    for (const auto& [N1, N2] : scale_pairs(c)) {
      for (double T : c.T) {
        const Geometry geo = bilinear_geometry(c, lambda, N1, N2);
        const int steps = c.steps ? *c.steps : phase_resolution_steps(N1, T);
        Cell cell;
        cell.params = {std::to_string(c.m), std::to_string(c.n), par(lambda),
                       par(geo.box_length()), par(N1), par(N2), par(T), std::to_string(steps)};
        cell.key = {lambda, N1, N2, T};
        cell.width = 5;
        cell.cost = c.draws * quadrature_cost(geo, steps);
        const std::uint64_t base = derive_seed(c.seed, index++);
        const int draws = c.draws;
        cell.run = [geo, steps, N1, N2, T, base, draws] {
          const DyadicBand b1 = DyadicBand::from_scale(N1), b2 = DyadicBand::from_scale(N2);
          const TimeWindow w(0.0, T, steps);
          EstimateRecord best;
          best.ratio = -1.0;
          for (int d = 0; d < draws; ++d) {
            const SpectralField f = random_phase_field(geo, b1, derive_seed(base, 2 * d));
            const SpectralField g = random_phase_field(geo, b2, derive_seed(base, 2 * d + 1));
            const EstimateRecord r = estimate_record(f, g, b1, b2, w);
            if (r.ratio > best.ratio) best = r;
          }
          Measured m;
          m.cells = {num(best.lhs), num(best.norm_f), num(best.norm_g), num(best.k_pred),
                     num(best.ratio)};
          m.values = {best.ratio};
          return std::vector<Measured>{m};
        };
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::vector<Cell> measure_cells(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  std::uint64_t index = 0;
  for (double lambda : c.lambda) {
    for (const auto& [N1, N2] : scale_pairs(c)) {
      Cell cell;
      cell.params = {par(lambda), par(N1), par(N2), std::to_string(c.draws), par(c.thickness)};
      cell.key = {lambda, N1, N2};
      cell.width = 7;
      cell.cost = (c.draws + 64.0) * (4 * N2 * lambda + 1) * 64;
      const std::uint64_t seed = derive_seed(c.seed, index++);
      const int draws = c.draws;
      const double h = c.thickness;
      cell.run = [lambda, N1, N2, draws, seed, h] {
        const MeasureSup sup = measure_C_sup(lambda, N1, N2, draws, seed, h);
        const double K = 1.0 / lambda + N2 / N1;
        Measured m;
        const double e1 = sup.eta.empty() ? 0.0 : sup.eta[0];
        const double e2 = sup.eta.empty() ? 0.0 : sup.eta[1];
        m.cells = {std::to_string(sup.evaluated), num(sup.sup), num(K), num(sup.sup / K),
                   num(e1), num(e2), num(sup.tau)};
        m.values = {sup.sup / K};
        return std::vector<Measured>{m};
      };
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

ExtremizerCase extremizer_case_for(const ExperimentConfig& c, ExtremizerKind kind,
                                   double lambda, double N1, double N2) {
  ExtremizerCase e;
  e.kind = kind;
  e.lambda = lambda;
  e.N1 = N1;
  e.N2 = N2;
  if (c.box_length) e.box_length = *c.box_length;
  switch (kind) {
    case ExtremizerKind::kRealSeparated:
      e.m = c.m;
      e.n = c.n;
      break;
    case ExtremizerKind::kTorusHighd:
      e.m = c.m + c.n >= 3 && c.m >= 2 ? c.m : 2;
      e.n = c.m + c.n >= 3 && c.m >= 2 ? c.n : 1;
      break;
    default:
      e.m = 1;
      e.n = 1;
  }
  return e;
}

std::vector<Cell> extremizer_cells(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  for (const auto& name : c.cases) {
    const ExtremizerKind kind = extremizer_kind_from_string(name);
    for (double lambda : c.lambda) {
      for (const auto& [N1, N2] : scale_pairs(c)) {
        const ExtremizerCase e = extremizer_case_for(c, kind, lambda, N1, N2);
        Cell cell;
        cell.key = {static_cast<double>(kind), lambda, N1, N2};
        cell.width = 6;
        std::string L = "", T = "", steps = "";
        try {
          const Geometry geo = extremizer_geometry(e);
          TimeWindow w = default_window(e);
          if (c.steps) w = TimeWindow(w.t_start(), w.t_end(), *c.steps);
          L = par(geo.box_length());
          T = par(w.t_end());
          steps = std::to_string(w.steps());
          cell.cost = quadrature_cost(geo, w.steps());
          cell.run = [e, w] {
            const LowerBoundResult r = lower_bound_check(e, w);
            Measured m;
            const auto& rec = r.record;
            m.cells = {num(rec.lhs), num(rec.norm_f), num(rec.norm_g), num(rec.k_pred),
                       num(rec.ratio), r.degenerate ? "1" : "0"};
            m.values = {rec.ratio, r.degenerate ? 1.0 : 0.0};
            return std::vector<Measured>{m};
          };
        } catch (const std::invalid_argument& err) {
          const std::string msg = err.what();
          cell.run = [msg]() -> std::vector<Measured> { throw PreconditionError(msg); };
        }
        cell.params = {name, std::to_string(e.m), std::to_string(e.n), par(lambda), L,
                       par(N1), par(N2), T, steps};
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::vector<Cell> imethod_cells(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  for (double s : c.s) {
    const std::vector<double> alphas =
        c.alpha.empty() ? std::vector<double>{(1.0 - s) / s} : c.alpha;
    for (double alpha : alphas) {
      for (int k : c.k) {
        for (double N : c.N1) {
          IncrementDataSpec spec = c.imethod;
          spec.seed = c.seed;
          const double lambda = std::pow(N, alpha);
          const int G = increment_grid(N, alpha, spec.band_factor);
          const double dt = spec.dt_coefficient / (N * N);
          const double steps = std::ceil(spec.horizon / dt);
          Cell cell;
          cell.params = {par(s), par(alpha), std::to_string(k), par(N), par(lambda),
                         std::to_string(G), par(dt), par(spec.horizon)};
          cell.key = {s, alpha, static_cast<double>(k), N};
          cell.width = 3;
          cell.cost = 2.0 * G * G * steps;
          cell.run = [N, s, alpha, k, spec] {
            const IncrementPoint p = increment_point(N, s, alpha, k, spec);
            Measured m;
            m.cells = {num(p.increment), num(p.mass_drift), num(p.energy_drift)};
            m.values = {p.increment};
            return std::vector<Measured>{m};
          };
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

std::vector<Cell> decay_cells(const ExperimentConfig& c) {
  const double L = c.box_length ? *c.box_length : 262144.0;
  const int G = c.grid_points ? *c.grid_points : (1 << 20);
  const int panels = c.steps ? *c.steps : 128;
  const double lambda = c.lambda.empty() ? 1.0 : c.lambda.front();
  const double N1 = c.N1.empty() ? 4.0 : c.N1.front();
  const double N2 = c.N2.empty() ? 1.0 : c.N2.front();
  const std::vector<double> Ts = c.T;
  Cell cell;
  cell.width = 5;
  cell.cost = static_cast<double>(G) * (panels + 1.0) * Ts.size();
  cell.run = [=] {
    const GrowthTable table = global_failure_demo(lambda, N1, N2, Ts, L, G, panels);
    const auto decay = decay_profile(global_failure_profile(L, G), Ts);
    std::vector<Measured> rows;
    for (std::size_t i = 0; i < Ts.size(); ++i) {
      const auto& r = table.rows[i];
      Measured m;
      m.cells = {par(lambda), par(r.T), num(r.l4_fourth), num(r.bilinear),
                 num(decay[i].min_scaled)};
      m.values = {r.T, r.l4_fourth, decay[i].min_scaled, table.fit_a, table.fit_b,
                  table.max_residual, table.fitted_range};
      rows.push_back(m);
    }
    return rows;
  };
  return {cell};
}

std::vector<std::string> header_for(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kBilinearSweep:
      return {"m", "n", "lambda", "L", "N1", "N2", "T", "steps", "lhs", "norm_f", "norm_g",
              "k_pred", "ratio", "seconds"};
    case ExperimentKind::kMeasureSweep:
      return {"lambda", "N1", "N2", "draws", "thickness", "evaluated", "sup_measure", "k_pred",
              "normalized", "eta1", "eta2", "tau", "seconds"};
    case ExperimentKind::kExtremizer:
      return {"case", "m", "n", "lambda", "L", "N1", "N2", "T", "steps", "lhs", "norm_f",
              "norm_g", "k_pred", "ratio", "degenerate", "seconds"};
    case ExperimentKind::kImethod:
      return {"s", "alpha", "k", "N", "lambda", "grid", "dt", "horizon", "increment",
              "mass_drift", "energy_drift", "seconds"};
    case ExperimentKind::kDecay:
      return {"lambda", "T", "l4_fourth", "bilinear", "decay_min_scaled", "seconds"};
  }
  return {};
}

std::vector<Cell> cells_for(const ExperimentConfig& c) {
  switch (c.kind) {
    case ExperimentKind::kBilinearSweep: return bilinear_cells(c);
    case ExperimentKind::kMeasureSweep: return measure_cells(c);
    case ExperimentKind::kExtremizer: return extremizer_cells(c);
    case ExperimentKind::kImethod: return imethod_cells(c);
    case ExperimentKind::kDecay: return decay_cells(c);
  }
  return {};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ordered_json spread_block(const std::vector<double>& v) {
  ordered_json j = ordered_json::object();
  if (v.empty()) return j;
  const double hi = *std::max_element(v.begin(), v.end());
  const double lo = *std::min_element(v.begin(), v.end());
  const double med = median(v);
  j["count"] = v.size();
  j["min"] = lo;
  j["median"] = med;
  j["max"] = hi;
  j["max_over_median"] = med > 0.0 ? hi / med : 0.0;
  j["max_over_min"] = lo > 0.0 ? hi / lo : 0.0;
  return j;
}

ordered_json summarize(const ExperimentConfig& c, const std::vector<Cell>& cells,
                       const std::vector<CellOutcome>& out) {
  ordered_json s;
  s["experiment"] = to_string(c.kind);
  s["seed"] = c.seed;
  s["cells"] = cells.size();
  s["estimated_cost"] = estimate_cost(c);
  ordered_json failures = ordered_json::array();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i].error.empty()) {
      failures.push_back({{"cell", i}, {"error", out[i].error}});
    }
  }
  s["failures"] = failures;

  switch (c.kind) {
    case ExperimentKind::kBilinearSweep:
    case ExperimentKind::kMeasureSweep: {
      std::vector<double> ratios, logT, byT;
      for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& r : out[i].rows) {
          ratios.push_back(r.values[0]);
          if (c.kind == ExperimentKind::kBilinearSweep) {
            logT.push_back(cells[i].key[3]);
            byT.push_back(r.values[0]);
          }
        }
      }
      s[c.kind == ExperimentKind::kBilinearSweep ? "ratio" : "normalized_sup"] =
          spread_block(ratios);
      std::vector<double> distinct = logT;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      if (distinct.size() >= 2 && byT.size() >= 3) {
        try {
          const FitResult f = fit_log_linear(logT, byT);
          s["ratio_vs_logT"] = {{"intercept", f.coefficients[0]},
                                {"slope", f.coefficients[1]},
                                {"rms_residual", f.rms_residual}};
        } catch (const DegenerateFit& e) {
          s["ratio_vs_logT"] = {{"error", e.what()}};
        }
      }
      break;
    }
    case ExperimentKind::kExtremizer: {
      std::map<int, std::vector<double>> ladders;
      for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& r : out[i].rows) {
          if (r.values[1] == 0.0) ladders[static_cast<int>(cells[i].key[0])].push_back(r.values[0]);
        }
      }
      ordered_json lad = ordered_json::object();
      for (const auto& [kind, v] : ladders) {
        ordered_json b = spread_block(v);
        const double hi = *std::max_element(v.begin(), v.end());
        const double lo = *std::min_element(v.begin(), v.end());
        b["min_over_max"] = hi > 0.0 ? lo / hi : 0.0;
        lad[to_string(static_cast<ExtremizerKind>(kind))] = b;
      }
      s["ladder_stability"] = lad;
      break;
    }
    case ExperimentKind::kImethod: {
      std::map<std::vector<double>, std::pair<std::vector<double>, std::vector<double>>> groups;
      for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& r : out[i].rows) {
          const auto& k = cells[i].key;
          auto& g = groups[{k[0], k[1], k[2]}];
          g.first.push_back(k[3]);
          g.second.push_back(r.values[0]);
        }
      }
      ordered_json arr = ordered_json::array();
      for (const auto& [key, g] : groups) {
        ordered_json b = {{"s", key[0]}, {"alpha", key[1]}, {"k", static_cast<int>(key[2])}};
        bool decreasing = true;
        for (std::size_t i = 1; i < g.second.size(); ++i) {
          if (!(g.second[i] < g.second[i - 1])) decreasing = false;
        }
        b["strictly_decreasing"] = decreasing;
        try {
          const FitResult f = fit_power_law(g.first, g.second);
          b["slope"] = f.coefficients[1];
          b["intercept"] = f.coefficients[0];
          b["rms_residual"] = f.rms_residual;
        } catch (const DegenerateFit& e) {
          b["fit_error"] = e.what();
        }
        arr.push_back(b);
      }
      s["increment_fits"] = arr;
      break;
    }
    case ExperimentKind::kDecay: {
      if (!out.empty() && !out[0].rows.empty()) {
        const auto& rows = out[0].rows;
        const auto& v = rows.front().values;
        s["log_fit"] = {{"a", v[3]}, {"b", v[4]}, {"max_residual", v[5]},
                        {"fitted_range", v[6]},
                        {"residual_fraction", v[6] > 0.0 ? v[5] / v[6] : 0.0}};
        const double anchor = v[2];
        double drift = 1.0;
        for (const auto& r : rows) {
          if (anchor > 0.0 && r.values[2] > 0.0) {
            drift = std::max({drift, r.values[2] / anchor, anchor / r.values[2]});
          }
        }
        s["decay"] = {{"anchor", anchor}, {"max_drift_factor", drift}};
      }
      break;
    }
  }
  return s;
}

}  // namespace

double estimate_cost(const ExperimentConfig& config) {
  config.validate();
  double total = 0.0;
  for (const auto& cell : cells_for(config)) total += cell.cost;
  return total;
}

SweepTable run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::vector<Cell> cells = cells_for(config);
  double cost = 0.0;
  for (const auto& cell : cells) cost += cell.cost;
  if (cost > config.max_cost) {
    std::ostringstream os;
    os << "estimated cost " << cost << " exceeds the ceiling " << config.max_cost;
    throw ResourceRefusal(os.str(), cost);
  }

  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        outcomes[i].rows = cells[i].run();
      } catch (const NumericalAbort& e) {
        outcomes[i].error = e.what();
        outcomes[i].numerical = true;
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
      outcomes[i].seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const int nthreads = std::min<int>(config.workers, std::max<std::size_t>(1, cells.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SweepTable table;
  table.header = header_for(config.kind);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& o = outcomes[i];
    const std::string secs = config.timing ? num(o.seconds) : "";
    if (!o.error.empty()) {
      ++table.failed_rows;
      if (o.numerical) ++table.numerical_aborts;
      std::vector<std::string> row = cells[i].params;
      row.resize(row.size() + cells[i].width);
      row.push_back(secs);
      table.rows.push_back(std::move(row));
      continue;
    }
    for (const auto& m : o.rows) {
      std::vector<std::string> row = cells[i].params;
      row.insert(row.end(), m.cells.begin(), m.cells.end());
      row.push_back(secs);
      table.rows.push_back(std::move(row));
    }
  }
  table.summary_json = summarize(config, cells, outcomes).dump(2) + "\n";
  return table;
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

void write_outputs(const SweepTable& table, const std::string& out_path) {
  std::ofstream csv(out_path, std::ios::binary);
  if (!csv) throw ConfigError("cannot write '" + out_path + "'");
  csv << to_csv(table);
  std::ofstream js(out_path + ".summary.json", std::ios::binary);
  if (!js) throw ConfigError("cannot write '" + out_path + ".summary.json'");
  js << table.summary_json;
}

}  // namespace waveguide
