#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "waveguide/error.hpp"
#include "waveguide/fourier.hpp"
#include "waveguide/geometry.hpp"
#include "waveguide/propagator.hpp"
#include "waveguide/random.hpp"

using namespace waveguide;

namespace {

SpectralField random_field(const Geometry& g, Domain d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> v(g.size());
  for (auto& x : v) x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return SpectralField(g, d, std::move(v));
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST(GeometryTest, RejectsBadShapes) {
  EXPECT_THROW(Geometry(0, 0, 1.0, 1.0, {}), PreconditionError);
  EXPECT_THROW(Geometry(1, 1, 0.0, 1.0, {8, 8}), PreconditionError);
  EXPECT_THROW(Geometry(1, 1, 1.0, 1.0, {8, 6}), PreconditionError);
  EXPECT_THROW(Geometry(1, 1, 1.0, 1.0, {2, 8}), PreconditionError);
  EXPECT_THROW(Geometry(1, 1, 1.0, 1.0, {8}), StructuralError);
}

TEST(GeometryTest, LatticeAndWeights) {
  const Geometry g(1, 1, 4.0, 16.0, {32, 8});
  EXPECT_DOUBLE_EQ(g.frequency_spacing(0), 1.0 / 16);
  EXPECT_DOUBLE_EQ(g.frequency_spacing(1), 1.0 / 4);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 0.5 * 0.5);
  EXPECT_DOUBLE_EQ(g.frequency_weight(), 1.0 / 64);
  EXPECT_EQ(g.wavenumber(1, 5), -3);
  EXPECT_EQ(g.index_of_wavenumber(1, -3), 5);
  EXPECT_THROW(g.index_of_wavenumber(1, 4), PreconditionError);
  const double xi[2] = {3.0 / 16, -0.5};
  const std::size_t site = g.frequency_site(xi);
  EXPECT_EQ(site, 3u * 8 + 6);
}

TEST(FourierTest, MatchesDirectTransform) {
  const double L = 6.0;
  const Geometry g(1, 0, 1.0, L, {64});
  const SpectralField f = random_field(g, Domain::kPhysical, 3);
  const SpectralField F = forward_transform(f);
  const auto ref = oracle::direct_dft(std::vector<Complex>(f.values().begin(), f.values().end()), L);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_NEAR(std::abs(F[i] - ref[i]), 0.0, 1e-12);
  }
}

TEST(FourierTest, PlancherelAndRoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Geometry g(1, 2, 0.5 + seed, 3.0 + seed, {16, 8, 4});
    const SpectralField f = random_field(g, Domain::kPhysical, seed);
    const SpectralField F = forward_transform(f);
    EXPECT_NEAR(l2_norm(F) / l2_norm(f), 1.0, 1e-12);
    EXPECT_LT(rel_diff(inverse_transform(F), f), 1e-13);
  }
}

TEST(FourierTest, GaussianPair) {
  const Geometry g(1, 0, 1.0, 32.0, {512});
  const SpectralField f = sample(g, [](std::span<const double> x) {
    return Complex(std::exp(-std::numbers::pi * x[0] * x[0]));
  });
  const SpectralField F = forward_transform(f);
  for (int j = 0; j < g.points(0); ++j) {
    const double xi = g.frequency(0, j);
    EXPECT_NEAR(std::abs(F[j] - std::exp(-std::numbers::pi * xi * xi)), 0.0, 1e-8);
  }
}

TEST(FourierTest, DomainMismatchIsStructural) {
  const Geometry g(0, 1, 1.0, 1.0, {8});
  const SpectralField F = SpectralField::zeros(g, Domain::kFrequency);
  EXPECT_THROW(forward_transform(F), PreconditionError);
  EXPECT_THROW(SpectralField(g, Domain::kPhysical, std::vector<Complex>(7)), StructuralError);
}

TEST(FourierTest, EvaluateAtAgreesWithGrid) {
  const Geometry g(1, 1, 2.0, 4.0, {16, 8});
  const SpectralField F = random_field(g, Domain::kFrequency, 11);
  const SpectralField f = inverse_transform(F);
  const int idx[2] = {5, 3};
  const double z[2] = {g.coordinate(0, 5), g.coordinate(1, 3)};
  EXPECT_NEAR(std::abs(evaluate_at(F, z) - f[g.linear_index(idx)]), 0.0, 1e-12);
}

TEST(PropagatorTest, UnitaryAndGroupLaw) {
  const Geometry g(1, 1, 3.0, 5.0, {16, 16});
  const SpectralField f = random_field(g, Domain::kPhysical, 5);
  const double s = 0.37, t = -0.81;
  EXPECT_NEAR(l2_norm(propagate(f, t)) / l2_norm(f), 1.0, 1e-12);
  EXPECT_LT(rel_diff(propagate(propagate(f, s), t), propagate(f, s + t)), 1e-12);
  EXPECT_LT(rel_diff(propagate(f, 0.0), f), 1e-15);
}

TEST(PropagatorTest, GaussianClosedForm) {
  const Geometry g(1, 0, 1.0, 1024.0, {16384});
  const SpectralField F = spectrum(g, [](std::span<const double> xi) {
    return Complex(std::exp(-std::numbers::pi * xi[0] * xi[0]));
  });
  for (double t : {0.1, 1.0, 10.0}) {
    const SpectralField u = inverse_transform(propagate(F, t));
    double err = 0.0;
    for (int j = 0; j < g.points(0); j += 7) {
      err = std::max(err, std::abs(u[j] - oracle::gaussian_evolution(g.coordinate(0, j), t)));
    }
    EXPECT_LT(err, 1e-8) << "t = " << t;
  }
}

TEST(PropagatorTest, SingleModePhase) {
  const Geometry g(0, 1, 2.0, 1.0, {8});
  const SpectralField F = spectrum(g, [](std::span<const double> xi) {
    return std::abs(xi[0] - 1.5) < 1e-12 ? Complex(1.0) : Complex{};
  });
  const SpectralField U = propagate(F, 0.25);
  const double xi[1] = {1.5};
  const Complex expected = std::polar(1.0, -kFourPiSquared * 2.25 * 0.25);
  EXPECT_NEAR(std::abs(U[g.frequency_site(xi)] - expected), 0.0, 1e-14);
}
