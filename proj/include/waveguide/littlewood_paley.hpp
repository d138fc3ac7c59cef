#pragma once

#include <functional>

#include "waveguide/spectral_field.hpp"

namespace waveguide {

// The 1-D profile eta_1: even, 1 on [-1, 1], 0 outside [-2, 2], monotone on
// [1, 2]. The default profile glues s(r) = exp(-1/r):
//   eta_1(r) = s(2 - r) / (s(2 - r) + s(r - 1)),  1 < r < 2.
struct CutoffSpec {
  std::function<double(double)> profile;

  static CutoffSpec smooth_step();
  double operator()(double r) const { return profile(r); }
};

double smooth_step_cutoff(double r);

// Dyadic scale N = 2^exponent, exponent >= 0.
class DyadicBand {
 public:
  explicit DyadicBand(int exponent, CutoffSpec cutoff = CutoffSpec::smooth_step());
  // Throws PreconditionError unless `scale` is an exact power of two >= 1.
  static DyadicBand from_scale(double scale,
                               CutoffSpec cutoff = CutoffSpec::smooth_step());

  int exponent() const { return exponent_; }
  double scale() const;
  const CutoffSpec& cutoff() const { return cutoff_; }

 private:
  int exponent_;
  CutoffSpec cutoff_;
};

// Tensor cutoff eta^d(xi / scale) = prod_i eta_1(xi_i / scale).
double tensor_cutoff(const CutoffSpec& cutoff, std::span<const double> xi,
                     double scale);

// Symbol of P_N: eta^d(xi/N) - eta^d(2 xi/N).
double band_symbol(const CutoffSpec& cutoff, std::span<const double> xi,
                   double scale);

// P_{<= N}; `scale` may be any positive value (P_{<= N/2} is used by P_N).
SpectralField project_leq(const SpectralField& f, double scale,
                          const CutoffSpec& cutoff = CutoffSpec::smooth_step());
SpectralField project_leq(const SpectralField& f, const DyadicBand& band);

// P_N = P_{<= N} - P_{<= N/2}.
SpectralField project_band(const SpectralField& f, const DyadicBand& band);

}  // namespace waveguide
