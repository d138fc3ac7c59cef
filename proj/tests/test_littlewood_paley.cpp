#include <gtest/gtest.h>

#include <cmath>

#include "waveguide/error.hpp"
#include "waveguide/fourier.hpp"
#include "waveguide/littlewood_paley.hpp"
#include "waveguide/random.hpp"

using namespace waveguide;

namespace {

SpectralField random_spectrum(const Geometry& g, std::uint64_t seed) {
  Rng rng(seed);
  return spectrum(g, [&](std::span<const double>) {
    return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  });
}

}  // namespace

TEST(CutoffTest, PlateausAndMonotone) {
  EXPECT_EQ(smooth_step_cutoff(0.0), 1.0);
  EXPECT_EQ(smooth_step_cutoff(1.0), 1.0);
  EXPECT_EQ(smooth_step_cutoff(-1.0), 1.0);
  EXPECT_EQ(smooth_step_cutoff(2.0), 0.0);
  EXPECT_EQ(smooth_step_cutoff(-3.5), 0.0);
  EXPECT_NEAR(smooth_step_cutoff(1.5), 0.5, 1e-15);
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 1.0 / 64) {
    const double v = smooth_step_cutoff(r);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(DyadicBandTest, FromScale) {
  EXPECT_EQ(DyadicBand::from_scale(16).exponent(), 4);
  EXPECT_DOUBLE_EQ(DyadicBand(3).scale(), 8.0);
  EXPECT_THROW(DyadicBand::from_scale(3), PreconditionError);
  EXPECT_THROW(DyadicBand::from_scale(0.5), PreconditionError);
  EXPECT_THROW(DyadicBand(-1), PreconditionError);
}

TEST(ProjectionTest, Telescoping) {
  const Geometry g(1, 1, 2.0, 3.0, {64, 32});
  const SpectralField f = random_spectrum(g, 1);
  SpectralField sum = project_leq(f, 0.5);
  for (int e = 0; e <= 3; ++e) {
    sum = combine(1.0, sum, 1.0, project_band(f, DyadicBand(e)));
  }
  const SpectralField top = project_leq(f, DyadicBand(3));
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(std::abs(sum[i] - top[i]), 0.0, 1e-14);
  }
}

TEST(ProjectionTest, IdempotentOnPlateauAndContractive) {
  const Geometry g(1, 1, 2.0, 3.0, {64, 32});
  const SpectralField f = random_spectrum(g, 2);
  const SpectralField low = project_leq(f, 2.0);
  const SpectralField twice = project_leq(low, 4.0);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(twice[i], low[i]);
  EXPECT_LE(l2_norm(project_band(f, DyadicBand(2))), l2_norm(f));
}

TEST(ProjectionTest, SeparatedBandsAreOrthogonal) {
  const Geometry g(1, 1, 4.0, 4.0, {64, 64});
  const SpectralField f = random_spectrum(g, 3);
  const Complex ip = inner_product(project_band(f, DyadicBand(3)), project_band(f, DyadicBand(1)));
  EXPECT_EQ(std::abs(ip), 0.0);
}

TEST(ProjectionTest, WorksFromPhysicalDomain) {
  const Geometry g(0, 1, 1.0, 1.0, {32});
  const SpectralField F = random_spectrum(g, 4);
  const SpectralField a = project_band(F, DyadicBand(2));
  const SpectralField b = forward_transform(project_band(inverse_transform(F), DyadicBand(2)));
  for (std::size_t i = 0; i < F.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-13);
}
