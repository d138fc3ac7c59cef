#include "waveguide/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "waveguide/error.hpp"
#include "waveguide/random.hpp"

namespace waveguide {

void CountingInstance::validate() const {
  if (!(thickness > 0.0)) throw PreconditionError("shell thickness must be positive");
  if (!(lambda > 0.0)) throw PreconditionError("lambda must be positive");
  if (!(N2 >= 1.0) || !(N1 >= N2)) throw PreconditionError("need N1 >= N2 >= 1");
  if (static_cast<int>(eta.size()) != m + n) {
    throw StructuralError("eta has the wrong number of components");
  }
  double r2 = 0.0;
  for (double e : eta) r2 += e * e;
  const double r = std::sqrt(r2);
  if (r < N1 / 2 - 1e-12 || r > 2 * N1 + 1e-12) {
    throw PreconditionError("|eta| must lie in [N1/2, 2 N1]");
  }
}

namespace {

double norm_squared(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void require_11(const CountingInstance& inst) {
  if (inst.m != 1 || inst.n != 1) {
    throw UnsupportedRegime("slice sequence is defined for m = n = 1");
  }
}

}  // namespace

double mu_k(const CountingInstance& inst, long k) {
  require_11(inst);
  const double d = k / inst.lambda - inst.eta[1] / 2;
  return inst.tau / 2 - norm_squared(inst.eta) / 4 - d * d;
}

double mu_step(const CountingInstance& inst, long k) {
  require_11(inst);
  return -(2.0 * k + 1.0) / (inst.lambda * inst.lambda) + inst.eta[1] / inst.lambda;
}

std::vector<SliceProfile> mu_sequence(const CountingInstance& inst, long k_lo,
                                      long k_hi) {
  std::vector<SliceProfile> out;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double mu = mu_k(inst, k);
    out.push_back({k, mu, slice_length_closed_form(mu, inst.thickness)});
  }
  return out;
}

double slice_length_closed_form(double mu, double thickness) {
  if (!(thickness > 0.0)) throw PreconditionError("shell thickness must be positive");
  const double h = thickness / 2;
  if (mu < -h) return 0.0;
  return 2.0 * std::sqrt(mu + h) - 2.0 * std::sqrt(std::max(0.0, mu - h));
}

std::vector<Interval> shell_intervals(double a, double mu, double thickness) {
  const double h = thickness / 2;
  if (mu < -h) return {};
  const double outer = std::sqrt(mu + h);
  if (mu <= h) return {{a - outer, a + outer}};
  const double inner = std::sqrt(mu - h);
  return {{a - outer, a - inner}, {a + inner, a + outer}};
}

std::vector<Interval> annulus_intervals(double q, double r_lo, double r_hi) {
  const double top = r_hi * r_hi - q;
  if (top < 0.0) return {};
  const double outer = std::sqrt(top);
  const double bottom = r_lo * r_lo - q;
  if (bottom <= 0.0) return {{-outer, outer}};
  const double inner = std::sqrt(bottom);
  return {{-outer, -inner}, {inner, outer}};
}

double intersection_length(const std::vector<Interval>& a,
                           const std::vector<Interval>& b) {
  double total = 0.0;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const double lo = std::max(x.lo, y.lo);
      const double hi = std::min(x.hi, y.hi);
      if (hi > lo) total += hi - lo;
    }
  }
  return total;
}

namespace {

// Sum over the periodic index k of the xi_1 slice measure, for fixed extra
// real coordinates folded into (mu_offset, q_offset).
double periodic_sum(const CountingInstance& inst, double eta_sq, double mu_offset,
                    double q_offset) {
  const double lam = inst.lambda;
  const double eta_t = inst.eta.back();
  const double a = inst.eta.front() / 2;
  const double r_lo = inst.N2 / 2, r_hi = 2 * inst.N2;
  const long kmax = static_cast<long>(std::floor(r_hi * lam));
  double total = 0.0;
  for (long k = -kmax; k <= kmax; ++k) {
    const double y = k / lam;
    const double q = q_offset + y * y;
    if (q > r_hi * r_hi) continue;
    const double d = y - eta_t / 2;
    const double mu = inst.tau / 2 - eta_sq / 4 - d * d - mu_offset;
    if (mu < -inst.thickness / 2) continue;
    total += intersection_length(shell_intervals(a, mu, inst.thickness),
                                 annulus_intervals(q, r_lo, r_hi));
  }
  return total / lam;
}

}  // namespace

double measure_C(const CountingInstance& inst, int outer_nodes) {
  inst.validate();
  const double eta_sq = norm_squared(inst.eta);
  if (inst.m == 1 && inst.n == 1) return periodic_sum(inst, eta_sq, 0.0, 0.0);
  if (inst.m == 2 && inst.n == 1) {
    if (outer_nodes < 16) throw PreconditionError("outer quadrature needs >= 16 nodes");
    const double r = 2 * inst.N2;
    const double h = 2 * r / outer_nodes;
    double total = 0.0;
    for (int j = 0; j < outer_nodes; ++j) {
      const double x2 = -r + (j + 0.5) * h;
      const double d = x2 - inst.eta[1] / 2;
      total += periodic_sum(inst, eta_sq, d * d, x2 * x2);
    }
    return total * h;
  }
  throw UnsupportedRegime("measure_C supports (m, n) = (1, 1) and (2, 1)");
}

namespace {

double snap(double v, double lambda) { return std::round(v * lambda) / lambda; }

}  // namespace

MeasureSup measure_C_sup(double lambda, double N1, double N2, int draws,
                         std::uint64_t seed, double thickness) {
  if (draws < 100) throw PreconditionError("measure_C_sup needs at least 100 draws");
  CountingInstance inst;
  inst.lambda = lambda;
  inst.N1 = N1;
  inst.N2 = N2;
  inst.thickness = thickness;
  inst.eta = {0.0, 0.0};

  MeasureSup best;
  auto consider = [&](double e1, double e2, double tau) {
    inst.eta = {e1, e2};
    inst.tau = tau;
    const double r = std::hypot(e1, e2);
    if (r < N1 / 2 || r > 2 * N1) return;
    const double v = measure_C(inst);
    ++best.evaluated;
    if (v > best.sup) {
      best.sup = v;
      best.eta = inst.eta;
      best.tau = tau;
    }
  };

  Rng rng(seed);
  std::vector<std::pair<double, double>> etas = {
      {N1, 0.0}, {0.0, snap(N1, lambda)}, {N1 / 2, 0.0}, {0.0, snap(N1 / 2, lambda)}};
  for (int i = 0; i < draws; ++i) {
    const double r = rng.uniform(N1 / 2, 2 * N1);
    const double th = rng.uniform(0.0, 2 * std::numbers::pi);
    const double e1 = r * std::cos(th);
    const double e2 = snap(r * std::sin(th), lambda);
    const double rho = rng.uniform(0.0, std::hypot(e1, e2) / 2 + 2 * N2);
    consider(e1, e2, (e1 * e1 + e2 * e2) / 2 + 2 * rho * rho);
    if (i % 16 == 0) etas.emplace_back(e1, e2);
  }

  for (const auto& [e1, e2] : etas) {
    const double eta_sq = e1 * e1 + e2 * e2;
    const double half = std::sqrt(eta_sq) / 2;
    for (double rad : {N2 / 2, 2 * N2}) {
      for (double rho : {half - rad, half + rad}) {
        consider(e1, e2, eta_sq / 2 + 2 * rho * rho);
      }
    }
    consider(e1, e2, eta_sq / 2 + 2 * half * half);
    const long kmax = static_cast<long>(std::floor(2 * N2 * lambda));
    const long stride = std::max<long>(1, (2 * kmax + 1) / 16);
    for (long k = -kmax; k <= kmax; k += stride) {
      const double d = k / lambda - e2 / 2;
      for (double mu : {-0.5, 0.0, 0.5, 1.0}) {
        consider(e1, e2, 2 * (mu + eta_sq / 4 + d * d));
      }
    }
  }
  return best;
}

}  // namespace waveguide
