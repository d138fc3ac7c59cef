#pragma once

#include <complex>
#include <span>
#include <vector>

#include "waveguide/geometry.hpp"

namespace waveguide {

using Complex = std::complex<double>;

enum class Domain { kPhysical, kFrequency };

// Complex samples of a function on a Geometry, either at the physical grid
// points or at the frequency lattice sites. Immutable once built.
class SpectralField {
 public:
  SpectralField(Geometry geometry, Domain domain, std::vector<Complex> values);

  static SpectralField zeros(const Geometry& geometry, Domain domain);

  const Geometry& geometry() const { return geometry_; }
  Domain domain() const { return domain_; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  // Moves the storage out; used by operations that build a new field from
  // an existing one without copying.
  std::vector<Complex> release() && { return std::move(values_); }

 private:
  Geometry geometry_;
  Domain domain_;
  std::vector<Complex> values_;
};

}  // namespace waveguide
