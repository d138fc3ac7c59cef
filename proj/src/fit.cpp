#include "waveguide/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "waveguide/error.hpp"

namespace waveguide {

std::string to_string(FitModel model) {
  switch (model) {
    case FitModel::kPowerLaw: return "power-law";
    case FitModel::kLogLinear: return "log-linear";
    case FitModel::kLinear: return "linear";
  }
  return "unknown";
}

namespace {

FitResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < A.cols()) throw DegenerateFit("design matrix is rank deficient");
  const Eigen::VectorXd c = qr.solve(b);
  const Eigen::VectorXd r = b - A * c;
  FitResult out;
  out.coefficients.assign(c.data(), c.data() + c.size());
  out.residuals.assign(r.data(), r.data() + r.size());
  out.rms_residual = std::sqrt(r.squaredNorm() / r.size());
  out.max_abs_residual = r.cwiseAbs().maxCoeff();
  return out;
}

double checked_log(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DegenerateFit("log-space fit needs positive finite values");
  }
  return std::log(v);
}

}  // namespace

FitResult fit_scaling(const std::vector<ScalingPoint>& records, FitModel model) {
  if (records.size() < 3) throw DegenerateFit("fit needs at least 3 records");
  const Eigen::Index rows = static_cast<Eigen::Index>(records.size());
  if (model == FitModel::kLinear) {
    const Eigen::Index cols = static_cast<Eigen::Index>(records.front().x.size());
    if (cols == 0) throw DegenerateFit("linear model needs at least one feature");
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (static_cast<Eigen::Index>(records[i].x.size()) != cols) {
        throw DegenerateFit("records carry different feature counts");
      }
      for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = records[i].x[j];
      b(i) = records[i].y;
    }
    return solve(A, b);
  }
  Eigen::MatrixXd A(rows, 2);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (records[i].x.size() != 1) throw DegenerateFit("scalar models need one feature");
    A(i, 0) = 1.0;
    A(i, 1) = checked_log(records[i].x[0]);
    b(i) = model == FitModel::kPowerLaw ? checked_log(records[i].y) : records[i].y;
  }
  return solve(A, b);
}

namespace {

std::vector<ScalingPoint> pack(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DegenerateFit("x and y differ in length");
  std::vector<ScalingPoint> pts;
  for (std::size_t i = 0; i < x.size(); ++i) pts.push_back({{x[i]}, y[i]});
  return pts;
}

}  // namespace

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  return fit_scaling(pack(x, y), FitModel::kPowerLaw);
}

FitResult fit_log_linear(const std::vector<double>& x, const std::vector<double>& y) {
  return fit_scaling(pack(x, y), FitModel::kLogLinear);
}

}  // namespace waveguide
