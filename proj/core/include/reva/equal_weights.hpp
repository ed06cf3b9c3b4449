#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reva/dataset.hpp"
#include "reva/linear_model.hpp"
#include "reva/model_selection.hpp"
#include "reva/penalty.hpp"

namespace reva {

/// Sum score X+ and deviation scores Z_j = X_j - X. (person mean). The
/// deviations are perfectly collinear by construction: each row sums to zero.
struct EqualWeightsDesign {
  Eigen::VectorXd sum_score;  // n
  Eigen::MatrixXd deviations; // n x p
  Eigen::Index p = 0;
};

/// Fit of y ~ intercept + xi * X+ + gamma' Z. Shrinking the gammas to zero
/// shrinks the implied per-predictor weights toward a common value.
struct EqualWeightsFit {
  double intercept = 0.0;
  double xi = 0.0;
  Eigen::VectorXd gammas;
};

EqualWeightsDesign reparametrize(const Dataset& data);

/// The augmented dataset [X+ | Z_1..Z_p] with the original response; column
/// zero is the sum score.
Dataset augmented_dataset(const Dataset& data);

/// Penalized path on the augmented design with the sum-score coefficient
/// unpenalized and each gamma at penalty factor one; no standardization (the
/// deviation scores share the original scale by construction). Path columns:
/// xi first, then the gammas.
CoefficientPath fit_equal_shrinkage(const Dataset& data, double alpha, const LambdaGrid& grid);

/// Unpenalized fit of the augmented design, minimum-norm over the collinear
/// gamma block. Fitted values equal fit_ols on the original design.
EqualWeightsFit fit_equal_ols(const Dataset& data);

/// Per-predictor coefficients on the original scale:
/// beta_j = xi + gamma_j - mean(gamma). Prediction-equivalent to the
/// augmented fit by construction.
LinearFit implied_coefficients(const EqualWeightsFit& fit);

/// Unpacks one path row (xi, gammas) into an EqualWeightsFit.
EqualWeightsFit equal_fit_at(const CoefficientPath& path, std::size_t index);

/// Cross-validated comparison of the standard lasso and the equal-weights
/// reparametrization on one shared fold assignment.
struct ModelComparison {
  FoldAssignment folds;
  LambdaGrid standard_grid;
  LambdaGrid equal_grid;
  CvCurve standard_curve;
  CvCurve equal_curve;
  CoefficientPath standard_path;  // full-data path, original design
  CoefficientPath equal_path;     // full-data path, augmented design
  LinearFit ols;                  // original design
  EqualWeightsFit equal_ols;      // minimum-norm augmented OLS
  double standard_min_mse = 0.0;
  double equal_min_mse = 0.0;
};

ModelComparison compare_models(const Dataset& data, double alpha, int folds, std::uint64_t seed);

/// Side-by-side coefficient table: rows intercept, sum, then predictors;
/// columns OLS / min / 1se for both parametrizations. Equal-weights rows
/// report the implied per-predictor coefficients; the sum row carries xi and
/// is empty for the standard model.
void write_comparison_table_csv(std::ostream& out, const ModelComparison& comparison,
                                const std::vector<std::string>& names, int precision = 6);

/// (lambda, mean_mse, se, n_nonzero) rows; nonzero counts come from the
/// full-data path restricted to the penalized block.
void write_comparison_curve_csv(std::ostream& out, const CvCurve& curve,
                                const CoefficientPath& path, bool skip_first_column,
                                int precision = 6);

}  // namespace reva
