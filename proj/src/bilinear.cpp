#include "waveguide/bilinear.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "waveguide/error.hpp"
#include "waveguide/fourier.hpp"
#include "waveguide/propagator.hpp"
#include "waveguide/random.hpp"

namespace waveguide {

TimeWindow::TimeWindow(double t_start, double t_end, int steps)
    : t_start_(t_start), t_end_(t_end), steps_(steps) {
  if (!(t_end_ > t_start_)) throw PreconditionError("time window needs t_end > t_start");
  if (steps_ < 16) throw PreconditionError("time window needs at least 16 steps");
}

namespace {

SpectralField to_frequency(const SpectralField& f) {
  return f.domain() == Domain::kFrequency ? f : forward_transform(f);
}

// Both spectra must fit so that their product does not wrap around.
void check_alias_margin(const SpectralField& F, const SpectralField& G) {
  const auto ef = wavenumber_extent(F);
  const auto eg = wavenumber_extent(G);
  const Geometry& geo = F.geometry();
  for (int dir = 0; dir < geo.dims(); ++dir) {
    if (ef[dir] < 0 || eg[dir] < 0) return;  // one factor vanishes
    const long needed = ef[dir] + eg[dir];
    if (needed >= geo.points(dir) / 2) {
      std::ostringstream os;
      os << "aliasing margin violated in direction " << dir << " ("
         << (geo.is_periodic(dir) ? "periodic" : "real")
         << "): product wavenumber extent " << needed << " needs more than "
         << geo.points(dir) << " grid points";
      throw PreconditionError(os.str());
    }
  }
}

// Trapezoid in time of sum_z |U(t)F|^2 |U(t)G|^2 dV. When `same` is set, G
// is taken equal to F and one transform per step is saved.
double integrate_product(const SpectralField& F, const SpectralField& G,
                         bool same, const TimeWindow& w) {
  const Geometry& geo = F.geometry();
  const auto norm2 = geo.frequency_norm_squared();
  const double dv = geo.cell_volume();
  std::vector<Complex> a(geo.size()), b(same ? 0 : geo.size());
  double total = 0.0;
  for (int j = 0; j <= w.steps(); ++j) {
    const double t = w.time(j);
    std::copy(F.values().begin(), F.values().end(), a.begin());
    propagate_in_place(a, norm2, t);
    inverse_in_place(geo, a);
    double s = 0.0;
    if (same) {
      for (const auto& v : a) {
        const double p = std::norm(v);
        s += p * p;
      }
    } else {
      std::copy(G.values().begin(), G.values().end(), b.begin());
      propagate_in_place(b, norm2, t);
      inverse_in_place(geo, b);
      for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i]) * std::norm(b[i]);
    }
    const double weight = (j == 0 || j == w.steps()) ? 0.5 : 1.0;
    total += weight * s * dv;
  }
  return total * w.dt();
}

}  // namespace

double product_integral(const SpectralField& f, const SpectralField& g,
                        const TimeWindow& w) {
  if (!(f.geometry() == g.geometry())) {
    throw StructuralError("bilinear operands live on different geometries");
  }
  const SpectralField F = to_frequency(f);
  const SpectralField G = to_frequency(g);
  check_alias_margin(F, G);
  return integrate_product(F, G, false, w);
}

double bilinear_integral(const SpectralField& f, const SpectralField& g,
                         const DyadicBand& N1, const DyadicBand& N2,
                         const TimeWindow& w) {
  if (!(f.geometry() == g.geometry())) {
    throw StructuralError("bilinear operands live on different geometries");
  }
  const SpectralField F = project_band(to_frequency(f), N1);
  const SpectralField G = project_band(to_frequency(g), N2);
  check_alias_margin(F, G);
  return integrate_product(F, G, false, w);
}

double spacetime_l2_product(const SpectralField& f, const SpectralField& g,
                            const DyadicBand& N1, const DyadicBand& N2,
                            const TimeWindow& w) {
  return std::sqrt(bilinear_integral(f, g, N1, N2, w));
}

double l4_fourth_power(const SpectralField& f, const TimeWindow& w) {
  const SpectralField F = to_frequency(f);
  check_alias_margin(F, F);
  return integrate_product(F, F, true, w);
}

double strichartz_l4(const SpectralField& f, const TimeWindow& w) {
  return std::pow(l4_fourth_power(f, w), 0.25);
}

double predicted_constant(int m, int n, double lambda, double N1, double N2) {
  if (!(N2 >= 1.0) || !(N1 >= N2)) {
    throw PreconditionError("predicted_constant needs N1 >= N2 >= 1");
  }
  if (!(lambda > 0.0)) throw PreconditionError("lambda must be positive");
  if (m == 1 && n == 1) return 1.0 / lambda + N2 / N1;
  const int d = m + n;
  if (m >= 2 && n >= 1 && d >= 3) {
    return std::pow(N2, d - 3) / lambda + std::pow(N2, d - 1) / N1;
  }
  std::ostringstream os;
  os << "no bilinear constant for (m, n) = (" << m << ", " << n << ")";
  if (m == 1 && n >= 2) os << "; the case m = 1, n >= 2 is open";
  throw UnsupportedRegime(os.str());
}

int phase_resolution_steps(double N1, double T) {
  const double steps = std::ceil(64.0 * N1 * N1 * T);
  return steps < 16.0 ? 16 : static_cast<int>(steps);
}

double quadrature_cost(const Geometry& geometry, int steps) {
  return 2.0 * static_cast<double>(geometry.size()) * (steps + 1.0);
}

SpectralField random_phase_field(const Geometry& geometry, const DyadicBand& band,
                                 std::uint64_t seed) {
  Rng rng(seed);
  const double scale = band.scale();
  return spectrum(geometry, [&](std::span<const double> xi) {
    // Draw for every site so the phase pattern does not depend on the cutoff.
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    if (band_symbol(band.cutoff(), xi, scale) == 0.0) return Complex{};
    return std::polar(1.0, theta);
  });
}

EstimateRecord estimate_record(const SpectralField& f, const SpectralField& g,
                               const DyadicBand& N1, const DyadicBand& N2,
                               const TimeWindow& w) {
  const Geometry& geo = f.geometry();
  EstimateRecord r;
  r.m = geo.m();
  r.n = geo.n();
  r.lambda = geo.lambda();
  r.box_length = geo.box_length();
  r.N1 = N1.scale();
  r.N2 = N2.scale();
  r.T = w.length();
  r.steps = w.steps();
  r.lhs = spacetime_l2_product(f, g, N1, N2, w);
  r.norm_f = l2_norm(f);
  r.norm_g = l2_norm(g);
  r.k_pred = predicted_constant(geo.m(), geo.n(), geo.lambda(), r.N1, r.N2);
  const double denom = std::sqrt(r.k_pred) * r.norm_f * r.norm_g;
  r.ratio = denom > 0.0 ? r.lhs / denom : 0.0;
  return r;
}

}  // namespace waveguide
