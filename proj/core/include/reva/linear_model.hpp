#pragma once

#include <Eigen/Dense>
#include <optional>

#include "reva/dataset.hpp"

namespace reva {

struct LinearFit {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
};

/// Out-of-sample quality of a prediction vector. pearson_r is empty when
/// either vector is constant (correlation undefined, not zero).
struct PredictionMetrics {
  double mse = 0.0;
  std::optional<double> pearson_r;
};

/// Least-squares fit with intercept. Rank-deficient designs get the
/// minimum-norm solution (SVD pseudo-inverse, relative cutoff 1e-10), so
/// fitted values stay well defined on collinear designs.
LinearFit fit_ols(const Dataset& data);

Eigen::VectorXd predict(const LinearFit& fit, const Eigen::MatrixXd& predictors);

/// mse is the mean (not sum) of squared differences.
PredictionMetrics evaluate(const Eigen::VectorXd& observed, const Eigen::VectorXd& predicted);

}  // namespace reva
