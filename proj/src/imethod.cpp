#include "waveguide/imethod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "waveguide/error.hpp"
#include "waveguide/fit.hpp"
#include "waveguide/fourier.hpp"
#include "waveguide/propagator.hpp"
#include "waveguide/random.hpp"

namespace waveguide {

double i_multiplier_profile(double r, double s) {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return std::pow(r, s - 1.0);
  const double t = r - 1.0;
  const double p1 = std::pow(2.0, s - 1.0);
  const double m1 = (s - 1.0) * std::pow(2.0, s - 2.0);
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) + (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
}

void IMultiplierSpec::validate() const {
  if (!(N > 0.0)) throw PreconditionError("I-multiplier needs N > 0");
  if (!(s > 0.0 && s <= 1.0)) throw PreconditionError("I-multiplier needs 0 < s <= 1");
}

double IMultiplierSpec::symbol(std::span<const double> xi) const {
  double r2 = 0.0;
  for (double x : xi) r2 += x * x;
  return i_multiplier_profile(std::sqrt(r2) / N, s);
}

SpectralField apply_i_multiplier(const SpectralField& f, const IMultiplierSpec& spec) {
  spec.validate();
  return apply_multiplier(f, [&](std::span<const double> xi) {
    return Complex(spec.symbol(xi));
  });
}

namespace {

SpectralField to_physical(const SpectralField& u) {
  return u.domain() == Domain::kPhysical ? u : inverse_transform(u);
}

SpectralField to_frequency(const SpectralField& u) {
  return u.domain() == Domain::kFrequency ? u : forward_transform(u);
}

double weighted_gradient(const SpectralField& F) {
  const auto norm2 = F.geometry().frequency_norm_squared();
  double s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) s += norm2[i] * std::norm(F[i]);
  return 4.0 * std::numbers::pi * std::numbers::pi * s * F.geometry().frequency_weight();
}

double potential(std::span<const Complex> u, int k, double dv) {
  double s = 0.0;
  for (const auto& v : u) s += std::pow(std::norm(v), k + 1);
  return s * dv / (2.0 * k + 2.0);
}

}  // namespace

double mass(const SpectralField& u) {
  const double n = l2_norm(u);
  return n * n;
}

double energy(const SpectralField& u, int k, double coupling) {
  if (k < 1) throw PreconditionError("nonlinearity index k must be >= 1");
  const SpectralField phys = to_physical(u);
  const SpectralField freq = to_frequency(u);
  return 0.5 * weighted_gradient(freq) +
         coupling * potential(phys.values(), k, phys.geometry().cell_volume());
}

double h1_norm_squared(const SpectralField& u) {
  const SpectralField F = to_frequency(u);
  return weighted_gradient(F) + mass(F);
}

double EnergyTrace::relative_mass_drift() const {
  double d = 0.0;
  for (double v : mass) d = std::max(d, std::abs(v - mass.front()));
  return mass.empty() || mass.front() == 0.0 ? d : d / mass.front();
}

double EnergyTrace::relative_energy_drift() const {
  double d = 0.0;
  for (double v : energy) d = std::max(d, std::abs(v - energy.front()));
  return energy.empty() || energy.front() == 0.0 ? d : d / std::abs(energy.front());
}

double EnergyTrace::max_increment() const {
  double d = 0.0;
  for (double v : increment) d = std::max(d, v);
  return d;
}

EnergyTrace split_step_evolve(const NlsRun& run) {
  if (run.k < 1) throw PreconditionError("nonlinearity index k must be >= 1");
  if (!(run.dt > 0.0) || !(run.horizon > 0.0)) {
    throw PreconditionError("dt and horizon must be positive");
  }
  if (run.record_every < 1) throw PreconditionError("record_every must be >= 1");
  if (run.imult) run.imult->validate();

  const SpectralField u0 = to_physical(run.initial);
  const Geometry& geo = u0.geometry();
  const auto norm2 = geo.frequency_norm_squared();
  const long steps = std::lround(std::ceil(run.horizon / run.dt - 1e-9));
  const double dt = run.horizon / steps;
  std::vector<Complex> u(u0.values().begin(), u0.values().end());

  auto sup = [&] {
    double m = 0.0;
    for (const auto& v : u) {
      const double a = std::abs(v);
      if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
      m = std::max(m, a);
    }
    return m;
  };
  const double sup0 = std::max(sup(), 1e-300);

  EnergyTrace trace;
  auto record = [&](double t) {
    const SpectralField cur(geo, Domain::kPhysical, u);
    trace.times.push_back(t);
    trace.mass.push_back(mass(cur));
    trace.energy.push_back(energy(cur, run.k, run.coupling));
    if (run.imult) {
      const double e = energy(apply_i_multiplier(cur, *run.imult), run.k, run.coupling);
      trace.modified_energy.push_back(e);
      trace.increment.push_back(std::abs(e - trace.modified_energy.front()));
    }
  };
  auto nonlinear = [&](double h) {
    if (run.coupling == 0.0) return;
    for (auto& v : u) {
      v *= std::polar(1.0, -run.coupling * std::pow(std::norm(v), run.k) * h);
    }
  };

  record(0.0);
  for (long j = 1; j <= steps; ++j) {
    nonlinear(dt / 2);
    forward_in_place(geo, u);
    propagate_in_place(u, norm2, dt);
    inverse_in_place(geo, u);
    nonlinear(dt / 2);
    const double s = sup();
    if (!(s <= 1e6 * sup0)) {
      throw NumericalAbort("split-step solution blew up at t = " + std::to_string(j * dt) +
                           " (sup norm " + std::to_string(s) + ")");
    }
    if (j % run.record_every == 0 || j == steps) record(j * dt);
  }
  trace.final_state = std::move(u);
  return trace;
}

int increment_grid(double N, double alpha, double band_factor) {
  const long K = static_cast<long>(std::floor(band_factor * N * std::pow(N, alpha)));
  int G = 4;
  while (G < 3 * K + 1) G *= 2;
  return G;
}

SpectralField increment_initial_data(double N, double s, double alpha,
                                     const IncrementDataSpec& spec) {
  if (!(N >= 1.0)) throw PreconditionError("increment data need N >= 1");
  const double lambda = std::pow(N, alpha);
  const double band = spec.band_factor * N;
  const int G = increment_grid(N, alpha, spec.band_factor);
  const Geometry geo(1, 1, lambda, lambda, std::vector<int>{G, G});
  Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(N)));
  const SpectralField raw = spectrum(geo, [&](std::span<const double> xi) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    if (r2 > band * band) return Complex{};
    return std::polar(std::pow(1.0 + r2, -(s + 1.0) / 2), theta);
  });
  const IMultiplierSpec I{N, s};
  const double norm = std::sqrt(h1_norm_squared(apply_i_multiplier(raw, I)));
  return inverse_transform(apply_multiplier(raw, [&](std::span<const double>) {
    return Complex(1.0 / norm);
  }));
}

IncrementPoint increment_point(double N, double s, double alpha, int k,
                               const IncrementDataSpec& spec) {
  NlsRun run(increment_initial_data(N, s, alpha, spec));
  run.k = k;
  run.coupling = spec.coupling;
  run.dt = spec.dt_coefficient / (N * N);
  run.horizon = spec.horizon;
  const long steps = std::lround(std::ceil(run.horizon / run.dt - 1e-9));
  run.record_every = static_cast<int>(std::max<long>(1, steps / std::max(1, spec.records)));
  run.imult = IMultiplierSpec{N, s};
  const EnergyTrace trace = split_step_evolve(run);
  IncrementPoint p;
  p.N = N;
  p.lambda = run.initial.geometry().lambda();
  p.grid = run.initial.geometry().points(0);
  p.dt = run.dt;
  p.increment = trace.max_increment();
  p.mass_drift = trace.relative_mass_drift();
  p.energy_drift = trace.relative_energy_drift();
  return p;
}

IncrementResult increment_experiment(double s, double alpha,
                                     const std::vector<double>& N_list, int k,
                                     const IncrementDataSpec& spec) {
  if (N_list.size() < 4) throw PreconditionError("increment ladder needs at least 4 points");
  IncrementResult out;
  for (double N : N_list) out.points.push_back(increment_point(N, s, alpha, k, spec));
  out.strictly_decreasing = true;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (!(out.points[i].increment < out.points[i - 1].increment)) out.strictly_decreasing = false;
  }
  std::vector<double> xs, ys;
  for (const auto& p : out.points) {
    if (!(p.increment > 0.0)) return out;
    xs.push_back(p.N);
    ys.push_back(p.increment);
  }
  const FitResult fit = fit_power_law(xs, ys);
  out.intercept = fit.coefficients[0];
  out.slope = fit.coefficients[1];
  out.residual = fit.rms_residual;
  return out;
}

}  // namespace waveguide
