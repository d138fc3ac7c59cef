#include "waveguide/extremizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "waveguide/error.hpp"
#include "waveguide/fit.hpp"
#include "waveguide/fourier.hpp"
#include "waveguide/littlewood_paley.hpp"
#include "waveguide/propagator.hpp"

namespace waveguide {

std::string to_string(ExtremizerKind kind) {
  switch (kind) {
    case ExtremizerKind::kRealSeparated: return "real-separated";
    case ExtremizerKind::kTorus1d: return "torus-1d";
    case ExtremizerKind::kTorusHighd: return "torus-highd";
    case ExtremizerKind::kGlobalFailure: return "global-failure";
  }
  return "unknown";
}

ExtremizerKind extremizer_kind_from_string(const std::string& name) {
  for (auto k : {ExtremizerKind::kRealSeparated, ExtremizerKind::kTorus1d,
                 ExtremizerKind::kTorusHighd, ExtremizerKind::kGlobalFailure}) {
    if (to_string(k) == name) return k;
  }
  throw PreconditionError("unknown extremizer case '" + name + "'");
}

namespace {

bool on_lattice(double v, double lambda) {
  const double k = v * lambda;
  return std::abs(k - std::round(k)) < 1e-9;
}

struct Box {
  std::vector<double> lo, hi;

  double max_norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const double a = std::max(std::abs(lo[i]), std::abs(hi[i]));
      s += a * a;
    }
    return s;
  }
  double min_norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] <= 0.0 && hi[i] >= 0.0) continue;
      const double a = std::min(std::abs(lo[i]), std::abs(hi[i]));
      s += a * a;
    }
    return s;
  }
  bool contains(std::span<const double> xi) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (xi[i] < lo[i] - 1e-9 || xi[i] > hi[i] + 1e-9) return false;
    }
    return true;
  }
};

std::pair<Box, Box> boxes(const ExtremizerCase& c) {
  const int d = c.m + c.n;
  Box f{std::vector<double>(d), std::vector<double>(d)};
  Box g = f;
  const double N1 = c.N1, N2 = c.N2;
  switch (c.kind) {
    case ExtremizerKind::kRealSeparated:
      for (int i = 1; i < d; ++i) {
        f.lo[i] = g.lo[i] = -N2 / 2;
        f.hi[i] = g.hi[i] = N2 / 2;
      }
      f.lo[0] = N1 + N2 / 2;
      f.hi[0] = N1 + 3 * N2 / 2;
      g.lo[0] = N2 / 2;
      g.hi[0] = 3 * N2 / 2;
      break;
    case ExtremizerKind::kTorus1d:
      f.lo[0] = g.lo[0] = -0.5;
      f.hi[0] = g.hi[0] = 0.5;
      f.lo[1] = f.hi[1] = N1;
      g.lo[1] = g.hi[1] = N2;
      break;
    case ExtremizerKind::kTorusHighd:
      for (int i = 0; i < d - 1; ++i) {
        f.lo[i] = -N2 / 2;
        f.hi[i] = N2 / 2;
        g.lo[i] = -0.5;
        g.hi[i] = 0.5;
      }
      f.lo[d - 1] = f.hi[d - 1] = N1;
      g.lo[d - 1] = g.hi[d - 1] = N2;
      break;
    case ExtremizerKind::kGlobalFailure:
      f.lo[0] = g.lo[0] = -1.0;
      f.hi[0] = g.hi[0] = 1.0;
      f.lo[1] = f.hi[1] = N1;
      g.lo[1] = g.hi[1] = N2;
      break;
  }
  if (c.box_scale != 1.0) {
    for (Box* b : {&f, &g}) {
      for (int i = 0; i < d; ++i) {
        const double mid = (b->lo[i] + b->hi[i]) / 2, half = (b->hi[i] - b->lo[i]) / 2;
        b->lo[i] = mid - c.box_scale * half;
        b->hi[i] = mid + c.box_scale * half;
      }
    }
  }
  return {f, g};
}

// Narrowest real-direction side of the two boxes; sets the packet width.
double packet_margin(const ExtremizerCase& c) {
  switch (c.kind) {
    case ExtremizerKind::kRealSeparated: return 4.0 / c.N2;
    case ExtremizerKind::kGlobalFailure: return 8.0;
    default: return 4.0;
  }
}

double default_t_end(const ExtremizerCase& c) {
  switch (c.kind) {
    case ExtremizerKind::kRealSeparated: return 1.0 / (c.N1 * c.N2);
    case ExtremizerKind::kTorus1d: return 1.0;
    case ExtremizerKind::kTorusHighd: return 0.5;
    case ExtremizerKind::kGlobalFailure: return 10.0;
  }
  return 1.0;
}

double real_speed_frequency(const ExtremizerCase& c) {
  const auto [f, g] = boxes(c);
  double v = 0.0;
  for (int i = 0; i < c.m; ++i) {
    for (const Box* b : {&f, &g}) {
      v = std::max({v, std::abs(b->lo[i]), std::abs(b->hi[i])});
    }
  }
  return v;
}

int next_power_of_two(double v) {
  int p = 4;
  while (p <= v) p *= 2;
  return p;
}

double phi_hat(double xi) {
  // FT of exp(-y^2) under exp(-2 pi i y xi), cut to P_{<=1/2}.
  return std::sqrt(std::numbers::pi) *
         std::exp(-std::numbers::pi * std::numbers::pi * xi * xi) *
         smooth_step_cutoff(2.0 * xi);
}

}  // namespace

void ExtremizerCase::validate() const {
  if (!(N2 >= 1.0) || !(N1 >= N2)) throw PreconditionError("need N1 >= N2 >= 1");
  if (!(lambda > 0.0)) throw PreconditionError("lambda must be positive");
  if (m < 0 || n < 0 || m + n < 1) throw PreconditionError("invalid (m, n)");
  if (!(box_scale >= 0.0)) throw PreconditionError("box_scale must be nonnegative");
  switch (kind) {
    case ExtremizerKind::kRealSeparated:
      if (m < 1) throw PreconditionError("real-separated needs a real direction");
      break;
    case ExtremizerKind::kTorus1d:
      if (m != 1 || n != 1) throw PreconditionError("torus-1d needs m = n = 1");
      break;
    case ExtremizerKind::kTorusHighd:
      if (m + n < 3 || n < 1) throw PreconditionError("torus-highd needs d >= 3 and n >= 1");
      break;
    case ExtremizerKind::kGlobalFailure:
      if (m != 1 || n != 1) throw PreconditionError("global-failure needs m = n = 1");
      break;
  }
  if (kind != ExtremizerKind::kRealSeparated &&
      (!on_lattice(N1, lambda) || !on_lattice(N2, lambda))) {
    throw PreconditionError("N1 and N2 must lie on the periodic lattice Z/lambda");
  }
}

TimeWindow default_window(const ExtremizerCase& c) {
  const double T = c.t_end > 0.0 ? c.t_end : default_t_end(c);
  const auto [f, g] = boxes(c);
  const double omega =
      kFourPiSquared * (f.max_norm_squared() - f.min_norm_squared() +
                        g.max_norm_squared() - g.min_norm_squared());
  const int steps = std::max(64, 16 * static_cast<int>(std::ceil(omega * T / (2 * std::numbers::pi))));
  return TimeWindow(0.0, T, steps);
}

void check_no_wrap(double box_length, double max_frequency, double T) {
  if (4 * std::numbers::pi * max_frequency * T + 8.0 > box_length / 2) {
    throw PreconditionError("wave packet wraps around the real box within [0, T]; enlarge L");
  }
}

namespace {

void check_wrap_with_margin(const ExtremizerCase& c, double L, double T) {
  const double need = 4 * std::numbers::pi * real_speed_frequency(c) * T + packet_margin(c);
  if (need > L / 2) {
    throw PreconditionError("wave packet wraps around the real box within [0, T]; enlarge L");
  }
}

}  // namespace

Geometry extremizer_geometry(const ExtremizerCase& c) {
  c.validate();
  const TimeWindow w = default_window(c);
  double L = c.box_length;
  if (L <= 0.0) {
    const double need = 2 * (4 * std::numbers::pi * real_speed_frequency(c) * w.t_end() +
                             packet_margin(c));
    L = 8.0;
    while (L < need) L *= 2;
  }
  const auto [f, g] = boxes(c);
  const int d = c.m + c.n;
  std::vector<int> points(d);
  for (int i = 0; i < d; ++i) {
    const double circ = i < c.m ? L : c.lambda;
    auto ext = [&](const Box& b) {
      return std::floor(std::max(std::abs(b.lo[i]), std::abs(b.hi[i])) * circ + 1e-9);
    };
    points[i] = next_power_of_two(2 * (ext(f) + ext(g)));
  }
  return Geometry(c.m, c.n, c.lambda, L, points);
}

ExtremizerPair build_pair(const ExtremizerCase& c) {
  const Geometry geo = extremizer_geometry(c);
  const auto [fb, gb] = boxes(c);
  auto indicator = [&](const Box& b) {
    return spectrum(geo, [&](std::span<const double> xi) {
      return b.contains(xi) ? Complex(1.0) : Complex{};
    });
  };
  auto profile = [&](const Box& b) {
    return spectrum(geo, [&](std::span<const double> xi) {
      return b.contains(xi) ? Complex(phi_hat(xi[0])) : Complex{};
    });
  };
  const bool smooth = c.kind == ExtremizerKind::kGlobalFailure;
  const bool empty = c.box_scale == 0.0;
  SpectralField f = empty ? SpectralField::zeros(geo, Domain::kFrequency)
                          : smooth ? profile(fb) : indicator(fb);
  SpectralField g = empty ? SpectralField::zeros(geo, Domain::kFrequency)
                          : smooth ? profile(gb) : indicator(gb);
  auto measure = [&](const SpectralField& F) {
    double count = 0.0;
    for (const auto& v : F.values()) count += std::norm(v);
    return count * geo.frequency_weight();
  };
  ExtremizerPair out{f, g, l2_norm(f), l2_norm(g), measure(f), measure(g)};
  return out;
}

LowerBoundResult lower_bound_check(const ExtremizerCase& c, const TimeWindow& w) {
  const ExtremizerPair pair = build_pair(c);
  check_wrap_with_margin(c, pair.f.geometry().box_length(), w.t_end());
  LowerBoundResult out;
  if (pair.norm_f == 0.0 || pair.norm_g == 0.0) {
    out.degenerate = true;
    out.record.N1 = c.N1;
    out.record.N2 = c.N2;
    out.record.lambda = c.lambda;
    return out;
  }
  out.record = estimate_record(pair.f, pair.g, DyadicBand::from_scale(c.N1),
                               DyadicBand::from_scale(c.N2), w);
  return out;
}

LowerBoundResult lower_bound_check(const ExtremizerCase& c) {
  return lower_bound_check(c, default_window(c));
}

double packet_peak(const SpectralField& f, double t) {
  const SpectralField u = inverse_transform(
      propagate(f.domain() == Domain::kFrequency ? f : forward_transform(f), t));
  const Geometry& geo = u.geometry();
  std::vector<int> idx(geo.dims(), 0);
  double best = -1.0, where = 0.0;
  for (int i = 0; i < geo.points(0); ++i) {
    idx[0] = i;
    const double a = std::abs(u[geo.linear_index(idx)]);
    if (a > best) {
      best = a;
      where = geo.coordinate(0, i);
    }
  }
  return where;
}

SpectralField global_failure_profile(double box_length, int grid_points) {
  const Geometry geo(1, 0, 1.0, box_length, std::vector<int>{grid_points});
  return spectrum(geo, [](std::span<const double> xi) { return Complex(phi_hat(xi[0])); });
}

GrowthTable global_failure_demo(double lambda, double N1, double N2,
                                const std::vector<double>& T_list,
                                double box_length, int grid_points, int panels) {
  if (!(N2 >= 1.0) || !(N1 >= N2)) throw PreconditionError("need N1 >= N2 >= 1");
  if (!(lambda > 0.0)) throw PreconditionError("lambda must be positive");
  if (T_list.size() < 3) throw PreconditionError("global_failure_demo needs at least 3 horizons");
  if (!std::is_sorted(T_list.begin(), T_list.end()) || T_list.front() <= 0.0) {
    throw PreconditionError("horizons must be positive and increasing");
  }
  check_no_wrap(box_length, 1.0, T_list.back());
  const SpectralField phi = global_failure_profile(box_length, grid_points);

  GrowthTable table;
  double acc = 0.0, start = 0.0;
  std::vector<double> xs, ys;
  for (double T : T_list) {
    if (T > start) acc += l4_fourth_power(phi, TimeWindow(start, T, panels));
    start = T;
    table.rows.push_back({T, acc, std::pow(lambda, -1.5) * std::sqrt(acc)});
    xs.push_back(T);
    ys.push_back(acc);
  }
  const FitResult fit = fit_log_linear(xs, ys);
  table.fit_a = fit.coefficients[0];
  table.fit_b = fit.coefficients[1];
  table.max_residual = fit.max_abs_residual;
  table.fitted_range = std::abs(table.fit_b * (std::log(xs.back()) - std::log(xs.front())));
  return table;
}

double global_failure_direct(double lambda, double N1, double N2, double T,
                             double box_length, int real_points, int panels) {
  ExtremizerCase c;
  c.kind = ExtremizerKind::kGlobalFailure;
  c.lambda = lambda;
  c.N1 = N1;
  c.N2 = N2;
  c.box_length = box_length;
  c.t_end = T;
  c.validate();
  check_no_wrap(box_length, 1.0, T);
  const Geometry base = extremizer_geometry(c);
  const Geometry geo(1, 1, lambda, box_length,
                     std::vector<int>{real_points, base.points(1)});
  auto mode = [&](double k) {
    return spectrum(geo, [&](std::span<const double> xi) {
      return std::abs(xi[1] - k) < 1e-9 ? Complex(phi_hat(xi[0])) : Complex{};
    });
  };
  return bilinear_integral(mode(N1), mode(N2), DyadicBand::from_scale(N1),
                           DyadicBand::from_scale(N2), TimeWindow(0.0, T, panels));
}

std::vector<DecayRow> decay_profile(const SpectralField& phi,
                                    const std::vector<double>& t_list, int samples) {
  const Geometry& geo = phi.geometry();
  if (geo.m() != 1 || geo.n() != 0) {
    throw PreconditionError("decay_profile needs a one-dimensional real geometry");
  }
  if (samples < 2) throw PreconditionError("decay_profile needs at least 2 samples");
  const SpectralField F = phi.domain() == Domain::kFrequency ? phi : forward_transform(phi);
  const auto ext = wavenumber_extent(F);
  const double xi_max = ext[0] < 0 ? 0.0 : ext[0] / geo.box_length();
  std::vector<DecayRow> out;
  for (double t : t_list) {
    check_no_wrap(geo.box_length(), xi_max, t);
    const SpectralField U = propagate(F, t);
    double lo = std::numeric_limits<double>::infinity();
    for (int j = 0; j < samples; ++j) {
      const double x = (t / 1000) * (-1.0 + 2.0 * j / (samples - 1));
      const double z[1] = {x};
      lo = std::min(lo, std::sqrt(t) * std::abs(evaluate_at(U, z)));
    }
    out.push_back({t, lo});
  }
  return out;
}

}  // namespace waveguide
