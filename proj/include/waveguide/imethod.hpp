#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "waveguide/spectral_field.hpp"

namespace waveguide {

// psi(r) = 1 for r <= 1, r^(s-1) for r >= 2, and the cubic Hermite blend
// matching values and slopes on [1, 2].
double i_multiplier_profile(double r, double s);

struct IMultiplierSpec {
  double N = 1.0;
  double s = 1.0;

  void validate() const;
  // m_N(xi) = psi(|xi| / N).
  double symbol(std::span<const double> xi) const;
};

SpectralField apply_i_multiplier(const SpectralField& f, const IMultiplierSpec& spec);

// int |u|^2.
double mass(const SpectralField& u);
// int 1/2 |grad u|^2 + coupling/(2k+2) |u|^(2k+2); the gradient term is taken
// in frequency space.
double energy(const SpectralField& u, int k, double coupling = 1.0);
// int |grad u|^2 + |u|^2.
double h1_norm_squared(const SpectralField& u);

// i u_t + Laplacian u = coupling |u|^(2k) u.
struct NlsRun {
  explicit NlsRun(SpectralField u0) : initial(std::move(u0)) {}

  SpectralField initial;
  int k = 1;
  double coupling = 1.0;
  double dt = 1e-3;
  double horizon = 1.0;
  int record_every = 1;
  std::optional<IMultiplierSpec> imult;
};

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
  std::vector<double> modified_energy;  // empty without an I-multiplier
  std::vector<double> increment;        // |E(I u(t)) - E(I u(0))|
  std::vector<Complex> final_state;     // physical samples at the horizon

  double relative_mass_drift() const;
  double relative_energy_drift() const;
  double max_increment() const;
};

// Strang splitting: half nonlinear phase rotation, exact linear step, half
// nonlinear. Throws NumericalAbort when the sup norm grows by 1e6 or turns
// non-finite.
EnergyTrace split_step_evolve(const NlsRun& run);

struct IncrementDataSpec {
  std::uint64_t seed = 1;
  double band_factor = 1.5;  // data live on |xi| <= band_factor * N
  double dt_coefficient = 1e-3;  // dt = dt_coefficient / N^2
  double horizon = 1.0;
  int records = 64;  // trace samples over the horizon
  double coupling = 1.0;
};

struct IncrementPoint {
  double N = 0.0;
  double lambda = 0.0;
  int grid = 0;
  double dt = 0.0;
  double increment = 0.0;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
};

struct IncrementResult {
  std::vector<IncrementPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  bool strictly_decreasing = false;
};

// Grid size per direction for the data at scale N: the smallest power of two
// >= 3K + 1 where K is the largest wavenumber of the band.
int increment_grid(double N, double alpha, double band_factor);

// Random-phase H^s data on R x T_lambda with lambda = N^alpha (the real box
// has the same length), normalized to |I_N u0|_{H^1} = 1.
SpectralField increment_initial_data(double N, double s, double alpha,
                                     const IncrementDataSpec& spec);

IncrementPoint increment_point(double N, double s, double alpha, int k,
                               const IncrementDataSpec& spec);

// One point per N; log(increment) fitted against log N. A zero increment
// anywhere skips the fit (slope stays 0).
IncrementResult increment_experiment(double s, double alpha,
                                     const std::vector<double>& N_list, int k,
                                     const IncrementDataSpec& spec);

}  // namespace waveguide
