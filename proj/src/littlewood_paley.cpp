#include "waveguide/littlewood_paley.hpp"

#include <cmath>

#include "waveguide/error.hpp"
#include "waveguide/fourier.hpp"

namespace waveguide {

namespace {
double glue(double r) { return r > 0.0 ? std::exp(-1.0 / r) : 0.0; }
}  // namespace

double smooth_step_cutoff(double r) {
  const double a = std::abs(r);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double up = glue(2.0 - a);
  const double down = glue(a - 1.0);
  return up / (up + down);
}

CutoffSpec CutoffSpec::smooth_step() { return CutoffSpec{&smooth_step_cutoff}; }

DyadicBand::DyadicBand(int exponent, CutoffSpec cutoff)
    : exponent_(exponent), cutoff_(std::move(cutoff)) {
  if (exponent_ < 0 || exponent_ > 60) {
    throw PreconditionError("dyadic exponent must lie in [0, 60]");
  }
}

DyadicBand DyadicBand::from_scale(double scale, CutoffSpec cutoff) {
  int e = 0;
  const double mant = std::frexp(scale, &e);
  if (!(scale >= 1.0) || mant != 0.5) {
    throw PreconditionError("dyadic scale must be a power of two >= 1, got " +
                            std::to_string(scale));
  }
  return DyadicBand(e - 1, std::move(cutoff));
}

double DyadicBand::scale() const { return std::ldexp(1.0, exponent_); }

double tensor_cutoff(const CutoffSpec& cutoff, std::span<const double> xi,
                     double scale) {
  double v = 1.0;
  for (double c : xi) {
    v *= cutoff(c / scale);
    if (v == 0.0) break;
  }
  return v;
}

double band_symbol(const CutoffSpec& cutoff, std::span<const double> xi,
                   double scale) {
  return tensor_cutoff(cutoff, xi, scale) - tensor_cutoff(cutoff, xi, 0.5 * scale);
}

SpectralField project_leq(const SpectralField& f, double scale,
                          const CutoffSpec& cutoff) {
  if (!(scale > 0.0)) throw PreconditionError("projection scale must be positive");
  return apply_multiplier(f, [&](std::span<const double> xi) {
    return Complex(tensor_cutoff(cutoff, xi, scale), 0.0);
  });
}

SpectralField project_leq(const SpectralField& f, const DyadicBand& band) {
  return project_leq(f, band.scale(), band.cutoff());
}

SpectralField project_band(const SpectralField& f, const DyadicBand& band) {
  const double scale = band.scale();
  return apply_multiplier(f, [&](std::span<const double> xi) {
    return Complex(band_symbol(band.cutoff(), xi, scale), 0.0);
  });
}

}  // namespace waveguide
