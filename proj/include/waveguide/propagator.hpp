#pragma once

#include <span>
#include <vector>

#include "waveguide/spectral_field.hpp"

namespace waveguide {

// Free Schrodinger propagator U(t): frequency multiplier
// exp(-4 pi^2 i |xi|^2 t). Returns a field in the input's domain.
SpectralField propagate(const SpectralField& f, double t);

// In-place variant on frequency storage with precomputed |xi|^2.
void propagate_in_place(std::span<Complex> spectrum,
                        std::span<const double> norm_squared, double t);

inline constexpr double kFourPiSquared = 39.47841760435743;  // 4 pi^2

}  // namespace waveguide
