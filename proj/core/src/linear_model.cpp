#include "reva/linear_model.hpp"

#include <cmath>

#include "reva/errors.hpp"

namespace reva {

namespace {
constexpr double kSingularValueCutoff = 1e-10;  // relative to the largest
}

LinearFit fit_ols(const Dataset& data) {
  validate(data, 2);

  // Center both sides; the intercept is recovered afterwards, and the
  // minimum-norm rule then applies to the coefficient vector alone.
  const Eigen::RowVectorXd x_means = data.predictors.colwise().mean();
  const double y_mean = data.response.mean();
  const Eigen::MatrixXd centered = data.predictors.rowwise() - x_means;
  const Eigen::VectorXd y_centered = data.response.array() - y_mean;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kSingularValueCutoff);

  LinearFit fit;
  fit.coefficients = svd.solve(y_centered);
  fit.intercept = y_mean - x_means.dot(fit.coefficients);

  if (!fit.coefficients.allFinite() || !std::isfinite(fit.intercept))
    throw InvalidInput("least-squares solution is not finite");
  return fit;
}

Eigen::VectorXd predict(const LinearFit& fit, const Eigen::MatrixXd& predictors) {
  if (predictors.cols() != fit.coefficients.size())
    throw InvalidInput("predictor columns (" + std::to_string(predictors.cols()) +
                       ") do not match fit (" + std::to_string(fit.coefficients.size()) + ")");
  return (predictors * fit.coefficients).array() + fit.intercept;
}

PredictionMetrics evaluate(const Eigen::VectorXd& observed, const Eigen::VectorXd& predicted) {
  if (observed.size() != predicted.size()) throw InvalidInput("observed/predicted length mismatch");
  if (observed.size() < 2) throw InvalidInput("evaluate needs at least two values");

  PredictionMetrics metrics;
  metrics.mse = (observed - predicted).squaredNorm() / static_cast<double>(observed.size());

  const Eigen::ArrayXd a = observed.array() - observed.mean();
  const Eigen::ArrayXd b = predicted.array() - predicted.mean();
  const double denom = std::sqrt(a.square().sum() * b.square().sum());
  if (denom > 0.0) metrics.pearson_r = (a * b).sum() / denom;
  return metrics;
}

}  // namespace reva
