#include "waveguide/propagator.hpp"

#include <cmath>

#include "waveguide/error.hpp"
#include "waveguide/fourier.hpp"

namespace waveguide {

void propagate_in_place(std::span<Complex> spectrum,
                        std::span<const double> norm_squared, double t) {
  if (spectrum.size() != norm_squared.size()) {
    throw StructuralError("spectrum and |xi|^2 table differ in size");
  }
  if (t == 0.0) return;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    spectrum[i] *= std::polar(1.0, -kFourPiSquared * norm_squared[i] * t);
  }
}

SpectralField propagate(const SpectralField& f, double t) {
  const Geometry& g = f.geometry();
  std::vector<Complex> buf(f.values().begin(), f.values().end());
  const bool physical = f.domain() == Domain::kPhysical;
  if (physical) forward_in_place(g, buf);
  const auto norm2 = g.frequency_norm_squared();
  propagate_in_place(buf, norm2, t);
  if (physical) inverse_in_place(g, buf);
  return SpectralField(g, f.domain(), std::move(buf));
}

}  // namespace waveguide
