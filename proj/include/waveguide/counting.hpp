#pragma once

#include <cstdint>
#include <vector>

namespace waveguide {

// Frequency-shell counting problem on R^m x Z^n_{1/lambda}:
//   C = { xi : |xi| in [N2/2, 2 N2], | |xi|^2 + |eta - xi|^2 - tau | <= thickness }.
// The last coordinate of eta is the periodic one.
struct CountingInstance {
  int m = 1;
  int n = 1;
  double lambda = 1.0;
  double N1 = 1.0;
  double N2 = 1.0;
  std::vector<double> eta;
  double tau = 0.0;
  double thickness = 1.0;

  void validate() const;
};

struct SliceProfile {
  long k = 0;
  double mu = 0.0;
  double length = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// mu_k = tau/2 - |eta|^2/4 - (k/lambda - eta_2/2)^2, for m = n = 1.
double mu_k(const CountingInstance& inst, long k);
// mu_{k+1} - mu_k = -(2k+1)/lambda^2 + eta_2/lambda.
double mu_step(const CountingInstance& inst, long k);
// Profiles for k in [k_lo, k_hi]; `length` holds the unrestricted slice length.
std::vector<SliceProfile> mu_sequence(const CountingInstance& inst, long k_lo,
                                      long k_hi);

// Measure of { x : |(x - a)^2 - mu| <= thickness/2 }.
double slice_length_closed_form(double mu, double thickness);

// The same set as at most two closed intervals, centered at `a`.
std::vector<Interval> shell_intervals(double a, double mu, double thickness);
// { x : x^2 in [r_lo^2 - q, r_hi^2 - q] } as at most two intervals.
std::vector<Interval> annulus_intervals(double q, double r_lo, double r_hi);
// Length of the intersection of two finite unions of disjoint intervals.
double intersection_length(const std::vector<Interval>& a,
                           const std::vector<Interval>& b);

// |C| under (d xi)_lambda. (1,1) sums exact slice intersections; (2,1)
// integrates those over xi_2 with `outer_nodes` midpoint nodes.
double measure_C(const CountingInstance& inst, int outer_nodes = 4096);

struct MeasureSup {
  double sup = 0.0;
  std::vector<double> eta;
  double tau = 0.0;
  int evaluated = 0;
};

// Largest |C| over `draws` random (eta, tau) plus adversarial choices:
// tangencies of the shell with the annulus circles and resonant tau that put
// some mu_k in [-1, 1]. m = n = 1.
MeasureSup measure_C_sup(double lambda, double N1, double N2, int draws,
                         std::uint64_t seed, double thickness = 1.0);

}  // namespace waveguide
