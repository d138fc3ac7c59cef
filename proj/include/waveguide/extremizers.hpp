#pragma once

#include <string>
#include <vector>

#include "waveguide/bilinear.hpp"
#include "waveguide/spectral_field.hpp"

namespace waveguide {

enum class ExtremizerKind { kRealSeparated, kTorus1d, kTorusHighd, kGlobalFailure };

std::string to_string(ExtremizerKind kind);
ExtremizerKind extremizer_kind_from_string(const std::string& name);

struct ExtremizerCase {
  ExtremizerKind kind = ExtremizerKind::kRealSeparated;
  int m = 1;
  int n = 1;
  double lambda = 1.0;
  double N1 = 1.0;
  double N2 = 1.0;
  double box_length = 0.0;  // 0 picks a default
  double t_end = 0.0;       // 0 picks a default
  double box_scale = 1.0;   // multiplies every box side; 0 gives empty boxes

  void validate() const;
};

struct ExtremizerPair {
  SpectralField f;
  SpectralField g;
  double norm_f = 0.0;
  double norm_g = 0.0;
  // Lattice measure of each frequency box under (d xi)_lambda.
  double box_measure_f = 0.0;
  double box_measure_g = 0.0;
};

// Time window the case is measured on.
TimeWindow default_window(const ExtremizerCase& c);
// Geometry sized for the boxes and the window.
Geometry extremizer_geometry(const ExtremizerCase& c);

// Indicator spectra of the frequency boxes:
//   real-separated: f on xi_1 in [N1 + N2/2, N1 + 3N2/2], g on
//     xi_1 in [N2/2, 3N2/2], both with |xi_j| <= N2/2 in the other directions;
//   torus-1d: |xi_1| <= 1/2 with xi_2 = N1 (f) or N2 (g);
//   torus-highd: xi_d = N1 with |xi_j| <= N2/2 (f); xi_d = N2 with
//     |xi_j| <= 1/2 (g).
ExtremizerPair build_pair(const ExtremizerCase& c);

struct LowerBoundResult {
  EstimateRecord record;
  bool degenerate = false;
};

// r = lhs / (K^1/2 |f| |g|) on the given window.
LowerBoundResult lower_bound_check(const ExtremizerCase& c, const TimeWindow& w);
LowerBoundResult lower_bound_check(const ExtremizerCase& c);

// Location on the x_1 axis (other coordinates 0) of the largest |U(t) f|.
double packet_peak(const SpectralField& f, double t);

// phi = P_{<=1/2}(exp(-y^2)) on a one-dimensional real geometry.
SpectralField global_failure_profile(double box_length, int grid_points);

struct GrowthRow {
  double T = 0.0;
  double l4_fourth = 0.0;   // int_0^T int |U(t) phi|^4
  double bilinear = 0.0;    // lambda^{-3/2} (l4_fourth)^{1/2}
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  double fit_a = 0.0;
  double fit_b = 0.0;
  double max_residual = 0.0;
  double fitted_range = 0.0;
};

// Cumulative fourth powers over [0, T] for increasing T, with a + b log T
// fitted to them. Windows between successive T use `panels` trapezoid
// panels. Throws PreconditionError when the box is too short for max T.
GrowthTable global_failure_demo(double lambda, double N1, double N2,
                                const std::vector<double>& T_list,
                                double box_length = 262144.0,
                                int grid_points = 1 << 20, int panels = 128);

// The same quantity evaluated directly on R x T_lambda with P_{N1}, P_{N2}
// applied: squared bilinear norm over [0, T].
double global_failure_direct(double lambda, double N1, double N2, double T,
                             double box_length, int real_points, int panels = 128);

// 4 pi xi_max T + 8 <= L/2.
void check_no_wrap(double box_length, double max_frequency, double T);

struct DecayRow {
  double t = 0.0;
  double min_scaled = 0.0;  // min over sampled |x| <= t/1000 of sqrt(t) |U(t) phi(x)|
};

std::vector<DecayRow> decay_profile(const SpectralField& phi,
                                    const std::vector<double>& t_list,
                                    int samples = 9);

}  // namespace waveguide
