#pragma once

#include <functional>
#include <span>
#include <vector>

#include "waveguide/spectral_field.hpp"

namespace waveguide {

// F f(xi) = int f(z) exp(-2 pi i z.xi) dz, evaluated by the lattice sum
// with weight cell_volume().
SpectralField forward_transform(const SpectralField& f);

// f(z) = int F(xi) exp(2 pi i z.xi) (dxi)_lambda, the lattice sum with weight
// frequency_weight().
SpectralField inverse_transform(const SpectralField& F);

// (F * G)(xi) = int F(xi - eta) G(eta) (d eta)_lambda, circular on the
// lattice. Computed through the physical product.
SpectralField frequency_convolve(const SpectralField& F, const SpectralField& G);

// Same normalizations as above, applied in place to raw storage laid out
// on `geometry`. Safe to call concurrently.
void forward_in_place(const Geometry& geometry, std::span<Complex> values);
void inverse_in_place(const Geometry& geometry, std::span<Complex> values);

// L2 norm under dz (physical) or (dxi)_lambda (frequency).
double l2_norm(const SpectralField& f);
Complex inner_product(const SpectralField& a, const SpectralField& b);

SpectralField sample(const Geometry& geometry,
                     const std::function<Complex(std::span<const double>)>& fn);
SpectralField spectrum(const Geometry& geometry,
                       const std::function<Complex(std::span<const double>)>& fn);

// Multiply frequency values by symbol(xi). Accepts either domain and returns
// a field in the same domain as the input.
SpectralField apply_multiplier(
    const SpectralField& f,
    const std::function<Complex(std::span<const double>)>& symbol);

// Linear combination a*f + b*g on a shared geometry and domain.
SpectralField combine(Complex a, const SpectralField& f, Complex b,
                      const SpectralField& g);

// Direct evaluation of the inversion sum at an arbitrary point z.
Complex evaluate_at(const SpectralField& F, std::span<const double> z);

// Largest |wavenumber| with a nonzero coefficient, per direction; -1 when
// the field is identically zero.
std::vector<long> wavenumber_extent(const SpectralField& F);

}  // namespace waveguide
