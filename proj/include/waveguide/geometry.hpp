#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace waveguide {

// Discretized stand-in for R^m x T^n_lambda.
//
// Directions [0, m) are real and are modeled as tori of circumference
// `box_length`; directions [m, m + n) are periodic with circumference
// `lambda`. Samples sit at z_j = j * circumference / points. Arrays are
// row-major with the last direction fastest.
//
// Frequency ordering along each direction is the usual wraparound order:
// index j carries the integer wavenumber k = j for j < points/2 and
// k = j - points otherwise, and the physical frequency is
// xi = k / circumference. Public operations address frequencies by xi.
class Geometry {
 public:
  Geometry(int m, int n, double lambda, double box_length,
           std::vector<int> grid_points);

  int m() const { return m_; }
  int n() const { return n_; }
  int dims() const { return m_ + n_; }
  double lambda() const { return lambda_; }
  double box_length() const { return box_length_; }
  std::span<const int> grid_points() const { return grid_points_; }
  int points(int dir) const { return grid_points_[dir]; }
  std::size_t size() const { return size_; }

  bool is_periodic(int dir) const { return dir >= m_; }
  double circumference(int dir) const {
    return is_periodic(dir) ? lambda_ : box_length_;
  }
  double spacing(int dir) const { return circumference(dir) / points(dir); }
  double frequency_spacing(int dir) const { return 1.0 / circumference(dir); }
  double nyquist(int dir) const {
    return points(dir) / (2.0 * circumference(dir));
  }

  // Product of physical sample spacings (quadrature weight in z).
  double cell_volume() const { return cell_volume_; }
  // Weight of one lattice site under (d xi)_lambda: 1/lambda per periodic
  // direction, 1/L per truncated real direction.
  double frequency_weight() const { return frequency_weight_; }

  long wavenumber(int dir, int index) const;
  double frequency(int dir, int index) const {
    return frequency_axes_[dir][index];
  }
  // Signed coordinate in [-c/2, c/2).
  double coordinate(int dir, int index) const {
    return coordinate_axes_[dir][index];
  }
  const std::vector<double>& frequency_axis(int dir) const {
    return frequency_axes_[dir];
  }
  const std::vector<double>& coordinate_axis(int dir) const {
    return coordinate_axes_[dir];
  }

  // Throws PreconditionError if k is not representable on the grid.
  int index_of_wavenumber(int dir, long k) const;
  std::size_t linear_index(std::span<const int> idx) const;
  // Lattice site at physical frequency xi; xi must lie on the lattice to
  // within 1e-9 of the spacing.
  std::size_t frequency_site(std::span<const double> xi) const;

  // |xi|^2 at every lattice site, in storage order.
  std::vector<double> frequency_norm_squared() const;

  bool operator==(const Geometry& other) const;

 private:
  int m_;
  int n_;
  double lambda_;
  double box_length_;
  std::vector<int> grid_points_;
  std::size_t size_ = 1;
  double cell_volume_ = 1.0;
  double frequency_weight_ = 1.0;
  std::vector<std::vector<double>> frequency_axes_;
  std::vector<std::vector<double>> coordinate_axes_;
};

bool is_power_of_two(long v);

// Smallest power of two (>= 4) whose grid on a circle of the given
// circumference resolves `max_frequency` with `samples_per_wavelength`
// samples per shortest wavelength.
int grid_for_band(double circumference, double max_frequency,
                  double samples_per_wavelength = 8.0);

// Smallest power of two (>= 4) with max wavenumber index strictly below
// points / 2, i.e. no wraparound aliasing for content up to
// `max_frequency`.
int grid_for_alias_free(double circumference, double max_frequency);

// Visit every lattice site: fn(linear_index, multi_index).
template <class Fn>
void for_each_site(const Geometry& g, Fn&& fn) {
  const int d = g.dims();
  std::vector<int> idx(d, 0);
  const std::size_t total = g.size();
  for (std::size_t lin = 0; lin < total; ++lin) {
    fn(lin, std::span<const int>(idx));
    for (int dir = d - 1; dir >= 0; --dir) {
      if (++idx[dir] < g.points(dir)) break;
      idx[dir] = 0;
    }
  }
}

// Visit every lattice site with its physical frequency vector.
template <class Fn>
void for_each_frequency(const Geometry& g, Fn&& fn) {
  std::vector<double> xi(g.dims());
  for_each_site(g, [&](std::size_t lin, std::span<const int> idx) {
    for (int dir = 0; dir < g.dims(); ++dir) xi[dir] = g.frequency(dir, idx[dir]);
    fn(lin, std::span<const double>(xi));
  });
}

// Visit every sample point with its signed physical coordinate.
template <class Fn>
void for_each_point(const Geometry& g, Fn&& fn) {
  std::vector<double> z(g.dims());
  for_each_site(g, [&](std::size_t lin, std::span<const int> idx) {
    for (int dir = 0; dir < g.dims(); ++dir) z[dir] = g.coordinate(dir, idx[dir]);
    fn(lin, std::span<const double>(z));
  });
}

}  // namespace waveguide
