#pragma once

#include <string>
#include <vector>

namespace waveguide {

enum class FitModel {
  kPowerLaw,   // log y = c0 + c1 log x
  kLogLinear,  // y = c0 + c1 log x
  kLinear,     // y = sum_j c_j x_j, no implicit intercept
};

struct ScalingPoint {
  std::vector<double> x;
  double y = 0.0;
};

struct FitResult {
  std::vector<double> coefficients;
  // Residuals in the space the model is fitted in (log y for power laws).
  std::vector<double> residuals;
  double rms_residual = 0.0;
  double max_abs_residual = 0.0;
};

// Ordinary least squares. Needs >= 3 points; throws DegenerateFit when the
// design matrix is rank deficient or the data cannot be log-transformed.
FitResult fit_scaling(const std::vector<ScalingPoint>& records, FitModel model);

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y);
FitResult fit_log_linear(const std::vector<double>& x, const std::vector<double>& y);

std::string to_string(FitModel model);

}  // namespace waveguide
