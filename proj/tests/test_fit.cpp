#include <gtest/gtest.h>

#include <cmath>

#include "waveguide/error.hpp"
#include "waveguide/fit.hpp"

using namespace waveguide;

TEST(FitTest, ExactPowerLaw) {
  std::vector<double> x, y;
  for (double N : {4.0, 8.0, 16.0, 32.0, 64.0}) {
    x.push_back(N);
    y.push_back(1.0 / N);
  }
  const FitResult r = fit_power_law(x, y);
  EXPECT_NEAR(r.coefficients[1], -1.0, 1e-10);
  EXPECT_NEAR(r.coefficients[0], 0.0, 1e-10);
  EXPECT_LT(r.max_abs_residual, 1e-12);
}

TEST(FitTest, TwoTermConstant) {
  std::vector<ScalingPoint> pts;
  for (double lambda : {1.0, 4.0, 16.0, 64.0}) {
    for (double N2 : {1.0, 2.0, 4.0}) {
      for (double N1 : {4.0, 16.0, 64.0}) {
        if (N1 < N2) continue;
        pts.push_back({{1 / lambda, N2 / N1}, 1 / lambda + N2 / N1});
      }
    }
  }
  const FitResult r = fit_scaling(pts, FitModel::kLinear);
  ASSERT_EQ(r.coefficients.size(), 2u);
  EXPECT_NEAR(r.coefficients[0], 1.0, 0.01);
  EXPECT_NEAR(r.coefficients[1], 1.0, 0.01);
}

TEST(FitTest, LogLinear) {
  std::vector<double> x, y;
  for (double T : {10.0, 100.0, 1000.0, 10000.0}) {
    x.push_back(T);
    y.push_back(2.5 + 0.75 * std::log(T));
  }
  const FitResult r = fit_log_linear(x, y);
  EXPECT_NEAR(r.coefficients[0], 2.5, 1e-10);
  EXPECT_NEAR(r.coefficients[1], 0.75, 1e-10);
}

TEST(FitTest, DegenerateInputs) {
  EXPECT_THROW(fit_power_law({2.0}, {1.0}), DegenerateFit);
  EXPECT_THROW(fit_power_law({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}), DegenerateFit);
  EXPECT_THROW(fit_power_law({1.0, 2.0, 4.0}, {1.0, 0.0, 3.0}), DegenerateFit);
  EXPECT_THROW(fit_power_law({1.0, 2.0}, {1.0, 2.0, 3.0}), DegenerateFit);
  std::vector<ScalingPoint> collinear = {{{1, 2}, 1}, {{2, 4}, 2}, {{3, 6}, 3}};
  EXPECT_THROW(fit_scaling(collinear, FitModel::kLinear), DegenerateFit);
  EXPECT_EQ(to_string(FitModel::kPowerLaw), "power-law");
}
