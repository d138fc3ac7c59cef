#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "waveguide/error.hpp"
#include "waveguide/extremizers.hpp"
#include "waveguide/fourier.hpp"

using namespace waveguide;

namespace {

ExtremizerCase make(ExtremizerKind kind, int m, int n, double lambda, double N1,
                    double N2) {
  ExtremizerCase c;
  c.kind = kind;
  c.m = m;
  c.n = n;
  c.lambda = lambda;
  c.N1 = N1;
  c.N2 = N2;
  return c;
}

}  // namespace

TEST(ExtremizerCaseTest, Validation) {
  EXPECT_THROW(make(ExtremizerKind::kTorus1d, 2, 1, 2, 8, 1).validate(), PreconditionError);
  EXPECT_THROW(make(ExtremizerKind::kTorusHighd, 1, 1, 2, 8, 1).validate(), PreconditionError);
  EXPECT_THROW(make(ExtremizerKind::kGlobalFailure, 2, 1, 2, 8, 1).validate(), PreconditionError);
  EXPECT_THROW(make(ExtremizerKind::kRealSeparated, 0, 2, 2, 8, 1).validate(), PreconditionError);
  EXPECT_THROW(make(ExtremizerKind::kTorus1d, 1, 1, 2.5, 8, 1).validate(), PreconditionError);
  EXPECT_NO_THROW(make(ExtremizerKind::kRealSeparated, 1, 1, 2.5, 8, 1).validate());
  EXPECT_THROW(extremizer_kind_from_string("torus-2d"), PreconditionError);
  EXPECT_EQ(extremizer_kind_from_string("torus-highd"), ExtremizerKind::kTorusHighd);
}

TEST(ExtremizerPairTest, PlancherelOnIndicators) {
  const ExtremizerCase cases[] = {
      make(ExtremizerKind::kRealSeparated, 1, 1, 4, 8, 4),
      make(ExtremizerKind::kRealSeparated, 1, 1, 4, 4, 4),
      make(ExtremizerKind::kTorus1d, 1, 1, 4, 8, 1),
      make(ExtremizerKind::kTorusHighd, 2, 1, 2, 4, 1),
  };
  for (const auto& c : cases) {
    const ExtremizerPair p = build_pair(c);
    EXPECT_GT(p.box_measure_f, 0.0);
    EXPECT_NEAR(p.norm_f * p.norm_f, p.box_measure_f, 1e-10 * p.box_measure_f) << to_string(c.kind);
    EXPECT_NEAR(p.norm_g * p.norm_g, p.box_measure_g, 1e-10 * p.box_measure_g) << to_string(c.kind);
    const double phys = l2_norm(inverse_transform(p.f));
    EXPECT_NEAR(phys, p.norm_f, 1e-10 * p.norm_f);
  }
}

TEST(ExtremizerPairTest, AdjacentBoxesAtEqualScales) {
  const auto c = make(ExtremizerKind::kRealSeparated, 1, 1, 4, 4, 4);
  const ExtremizerPair p = build_pair(c);
  const Geometry& g = p.f.geometry();
  double f_lo = INFINITY, g_hi = -INFINITY;
  for_each_frequency(g, [&](std::size_t i, std::span<const double> xi) {
    if (p.f[i] != Complex{}) f_lo = std::min(f_lo, xi[0]);
    if (p.g[i] != Complex{}) g_hi = std::max(g_hi, xi[0]);
  });
  EXPECT_NEAR(f_lo, 6.0, 1e-12);
  EXPECT_NEAR(g_hi, 6.0, 1e-12);
}

TEST(ExtremizerPairTest, TorusModulusIsInverseLambda) {
  for (double lambda : {2.0, 4.0}) {
    const auto c = make(ExtremizerKind::kTorus1d, 1, 1, lambda, 8, 1);
    const ExtremizerPair p = build_pair(c);
    const SpectralField f = inverse_transform(p.f);
    const Geometry& g = f.geometry();
    for (int i = 0; i < g.points(0); ++i) {
      if (std::abs(g.coordinate(0, i)) > 0.125) continue;
      for (int j = 0; j < g.points(1); ++j) {
        const int idx[2] = {i, j};
        const double a = lambda * std::abs(f[g.linear_index(idx)]);
        EXPECT_GT(a, 0.9);
        EXPECT_LT(a, 1.1);
      }
    }
  }
}

TEST(ExtremizerPairTest, ZeroBoxIsDegenerate) {
  auto c = make(ExtremizerKind::kTorus1d, 1, 1, 2, 8, 1);
  c.box_scale = 0.0;
  const ExtremizerPair p = build_pair(c);
  EXPECT_EQ(p.norm_f, 0.0);
  EXPECT_EQ(p.norm_g, 0.0);
  const LowerBoundResult r = lower_bound_check(c);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.record.ratio, 0.0);
}

TEST(ExtremizerPairTest, PacketTransport) {
  const double N1 = 16, N2 = 2;
  auto c = make(ExtremizerKind::kRealSeparated, 1, 1, 2, N1, N2);
  c.t_end = 0.05;
  const ExtremizerPair p = build_pair(c);
  for (double t : {0.01, 0.025, 0.05}) {
    const double x = packet_peak(p.f, t);
    EXPECT_NEAR(x, 4 * std::numbers::pi * N1 * t, 4 * std::numbers::pi * N2 * t + 2.0 / N2) << t;
  }
}

TEST(ExtremizerPairTest, WindowDefaults) {
  const auto c = make(ExtremizerKind::kRealSeparated, 1, 1, 4, 16, 4);
  const TimeWindow w = default_window(c);
  EXPECT_DOUBLE_EQ(w.t_end(), 1.0 / 64);
  EXPECT_GE(w.steps(), 64);
  const Geometry g = extremizer_geometry(c);
  EXPECT_GE(g.box_length(), 8.0);
  EXPECT_TRUE(is_power_of_two(static_cast<long>(g.box_length())));
}

TEST(LowerBoundTest, ShortTorusLadder) {
  std::vector<double> r;
  for (double lambda : {2.0, 4.0}) {
    const auto res = lower_bound_check(make(ExtremizerKind::kTorus1d, 1, 1, lambda, 8, 1));
    EXPECT_FALSE(res.degenerate);
    r.push_back(res.record.ratio);
  }
  EXPECT_GT(r[0], 0.0);
  EXPECT_GE(std::min(r[0], r[1]) / std::max(r[0], r[1]), 1.0 / 32);
}

TEST(LowerBoundTest, ShortRealLadder) {
  std::vector<double> r;
  for (double N1 : {8.0, 16.0}) {
    r.push_back(lower_bound_check(make(ExtremizerKind::kRealSeparated, 1, 1, 4, N1, 4)).record.ratio);
  }
  EXPECT_GT(r[0], 0.0);
  EXPECT_GE(std::min(r[0], r[1]) / std::max(r[0], r[1]), 1.0 / 32);
}

TEST(LowerBoundTest, WrapIsRefused) {
  auto c = make(ExtremizerKind::kRealSeparated, 1, 1, 4, 16, 4);
  c.box_length = 8.0;
  EXPECT_THROW(lower_bound_check(c, TimeWindow(0, 1.0, 64)), PreconditionError);
}

TEST(GlobalFailureTest, DirectMatchesReduction) {
  const double lambda = 2, L = 128, T = 2;
  const int G = 1024, panels = 128;
  const double direct = global_failure_direct(lambda, 2, 1, T, L, G, panels);
  const double l4 = l4_fourth_power(global_failure_profile(L, G), TimeWindow(0, T, panels));
  EXPECT_GT(l4, 0.0);
  EXPECT_NEAR(direct, l4 / (lambda * lambda * lambda), 1e-10 * direct);
}

TEST(GlobalFailureTest, GrowsWithHorizon) {
  const auto table = global_failure_demo(1, 1, 1, {1, 2, 4}, 128, 1024, 64);
  ASSERT_EQ(table.rows.size(), 3u);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    EXPECT_GT(table.rows[i].l4_fourth, table.rows[i - 1].l4_fourth);
    EXPECT_GT(table.rows[i].bilinear, table.rows[i - 1].bilinear);
  }
  EXPECT_THROW(global_failure_demo(1, 1, 1, {1, 2, 100}, 128, 1024), PreconditionError);
  EXPECT_THROW(global_failure_demo(1, 1, 1, {1, 2}, 128, 1024), PreconditionError);
}

TEST(DecayTest, ZeroProfileAndPositivity) {
  const double L = 1024;
  const SpectralField phi = global_failure_profile(L, 4096);
  const auto rows = decay_profile(phi, {10.0, 20.0});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GT(rows[0].min_scaled, 0.1);
  EXPECT_LT(rows[1].min_scaled / rows[0].min_scaled, 4.0);
  EXPECT_GT(rows[1].min_scaled / rows[0].min_scaled, 0.25);
  const auto zero = decay_profile(SpectralField::zeros(phi.geometry(), Domain::kFrequency), {10.0});
  EXPECT_EQ(zero[0].min_scaled, 0.0);
  const Geometry two(1, 1, 1.0, 8.0, {8, 8});
  EXPECT_THROW(decay_profile(SpectralField::zeros(two, Domain::kFrequency), {1.0}), PreconditionError);
}
