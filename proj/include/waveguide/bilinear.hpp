#pragma once

#include <cstdint>

#include "waveguide/littlewood_paley.hpp"
#include "waveguide/spectral_field.hpp"

namespace waveguide {

// Closed interval [t_start, t_end] split into `steps` trapezoid panels.
class TimeWindow {
 public:
  TimeWindow(double t_start, double t_end, int steps);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  int steps() const { return steps_; }
  double length() const { return t_end_ - t_start_; }
  double dt() const { return length() / steps_; }
  double time(int j) const { return t_start_ + length() * j / steps_; }

 private:
  double t_start_;
  double t_end_;
  int steps_;
};

struct EstimateRecord {
  int m = 0;
  int n = 0;
  double lambda = 0.0;
  double box_length = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;
  double T = 0.0;
  int steps = 0;
  double lhs = 0.0;
  double norm_f = 0.0;
  double norm_g = 0.0;
  double k_pred = 0.0;
  double ratio = 0.0;
};

// int_w int |U(t) P_N1 f|^2 |U(t) P_N2 g|^2 dz dt: trapezoid in t, exact
// lattice sum in z. Throws PreconditionError (naming the direction) when the
// product's wavenumber support would wrap around the grid.
double bilinear_integral(const SpectralField& f, const SpectralField& g,
                         const DyadicBand& N1, const DyadicBand& N2,
                         const TimeWindow& w);

// Square root of bilinear_integral: the left side of the bilinear estimate.
double spacetime_l2_product(const SpectralField& f, const SpectralField& g,
                            const DyadicBand& N1, const DyadicBand& N2,
                            const TimeWindow& w);

// Same quadrature without projections, on fields whose own support is used
// for the aliasing check.
double product_integral(const SpectralField& f, const SpectralField& g,
                        const TimeWindow& w);

// int_w int |U(t) f|^4 dz dt and its fourth root.
double l4_fourth_power(const SpectralField& f, const TimeWindow& w);
double strichartz_l4(const SpectralField& f, const TimeWindow& w);

// K(lambda, N1, N2): 1/lambda + N2/N1 for m = n = 1, and
// N2^(d-3)/lambda + N2^(d-1)/N1 for d = m + n >= 3 with m >= 2.
// Throws UnsupportedRegime otherwise (m = 1, n >= 2 is open).
double predicted_constant(int m, int n, double lambda, double N1, double N2);

// 64 * N1^2 * T panels (at least 16).
int phase_resolution_steps(double N1, double T);

// Modeled work for one quadrature: lattice sites x time samples x 2 FFTs.
double quadrature_cost(const Geometry& geometry, int steps);

// Frequency field with independent unit-modulus random phases on every
// lattice site where the P_N symbol is nonzero.
SpectralField random_phase_field(const Geometry& geometry, const DyadicBand& band,
                                 std::uint64_t seed);

// Evaluates lhs, the data norms, K and the ratio lhs / (K^1/2 |f| |g|).
EstimateRecord estimate_record(const SpectralField& f, const SpectralField& g,
                               const DyadicBand& N1, const DyadicBand& N2,
                               const TimeWindow& w);

}  // namespace waveguide
