#include "waveguide/geometry.hpp"

#include <cmath>
#include <sstream>

#include "waveguide/error.hpp"

namespace waveguide {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

Geometry::Geometry(int m, int n, double lambda, double box_length,
                   std::vector<int> grid_points)
    : m_(m),
      n_(n),
      lambda_(lambda),
      box_length_(box_length),
      grid_points_(std::move(grid_points)) {
  if (m_ < 0 || n_ < 0 || m_ + n_ < 1) {
    throw PreconditionError("geometry needs m >= 0, n >= 0 and m + n >= 1");
  }
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw PreconditionError("torus scale lambda must be positive");
  }
  if (!(box_length_ > 0.0) || !std::isfinite(box_length_)) {
    throw PreconditionError("box length must be positive");
  }
  if (static_cast<int>(grid_points_.size()) != m_ + n_) {
    throw StructuralError("grid_points must have one entry per direction");
  }
  for (int dir = 0; dir < dims(); ++dir) {
    const int p = grid_points_[dir];
    if (p < 4 || !is_power_of_two(p)) {
      std::ostringstream os;
      os << "grid_points[" << dir << "] = " << p
         << " is not a power of two >= 4";
      throw PreconditionError(os.str());
    }
    size_ *= static_cast<std::size_t>(p);
    cell_volume_ *= spacing(dir);
    frequency_weight_ /= circumference(dir);

    std::vector<double> freq(p), coord(p);
    const double c = circumference(dir);
    for (int j = 0; j < p; ++j) {
      const long k = j < p / 2 ? j : j - p;
      freq[j] = static_cast<double>(k) / c;
      coord[j] = static_cast<double>(k) * c / p;
    }
    frequency_axes_.push_back(std::move(freq));
    coordinate_axes_.push_back(std::move(coord));
  }
}

long Geometry::wavenumber(int dir, int index) const {
  const int p = points(dir);
  return index < p / 2 ? index : static_cast<long>(index) - p;
}

int Geometry::index_of_wavenumber(int dir, long k) const {
  const long p = points(dir);
  if (k < -p / 2 || k >= p / 2) {
    std::ostringstream os;
    os << "wavenumber " << k << " not representable in direction " << dir
       << " with " << p << " points";
    throw PreconditionError(os.str());
  }
  return static_cast<int>(k >= 0 ? k : k + p);
}

std::size_t Geometry::linear_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != dims()) {
    throw StructuralError("multi-index rank does not match geometry");
  }
  std::size_t lin = 0;
  for (int dir = 0; dir < dims(); ++dir) {
    lin = lin * static_cast<std::size_t>(points(dir)) +
          static_cast<std::size_t>(idx[dir]);
  }
  return lin;
}

std::size_t Geometry::frequency_site(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dims()) {
    throw StructuralError("frequency vector rank does not match geometry");
  }
  std::vector<int> idx(dims());
  for (int dir = 0; dir < dims(); ++dir) {
    const double scaled = xi[dir] * circumference(dir);
    const double k = std::round(scaled);
    if (std::abs(scaled - k) > 1e-9) {
      std::ostringstream os;
      os << "frequency " << xi[dir] << " is off the lattice in direction "
         << dir;
      throw PreconditionError(os.str());
    }
    idx[dir] = index_of_wavenumber(dir, static_cast<long>(k));
  }
  return linear_index(idx);
}

std::vector<double> Geometry::frequency_norm_squared() const {
  std::vector<double> out(size_);
  for_each_frequency(*this, [&](std::size_t lin, std::span<const double> xi) {
    double s = 0.0;
    for (double v : xi) s += v * v;
    out[lin] = s;
  });
  return out;
}

bool Geometry::operator==(const Geometry& other) const {
  return m_ == other.m_ && n_ == other.n_ && lambda_ == other.lambda_ &&
         box_length_ == other.box_length_ &&
         grid_points_ == other.grid_points_;
}

namespace {
int next_power_of_two_at_least(double v) {
  int p = 4;
  while (p < v) p *= 2;
  return p;
}
}  // namespace

int grid_for_band(double circumference, double max_frequency,
                  double samples_per_wavelength) {
  return next_power_of_two_at_least(samples_per_wavelength * max_frequency *
                                    circumference);
}

int grid_for_alias_free(double circumference, double max_frequency) {
  const double kmax = std::floor(max_frequency * circumference + 1e-9);
  return next_power_of_two_at_least(2.0 * kmax + 1.0);
}

}  // namespace waveguide
