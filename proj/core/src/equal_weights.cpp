#include "reva/equal_weights.hpp"

#include <ostream>

#include "reva/csv.hpp"
#include "reva/errors.hpp"

namespace reva {

namespace {
PenaltySpec equal_spec(double alpha, Eigen::Index p, double lambda = 0.0) {
  PenaltySpec spec;
  spec.alpha = alpha;
  spec.lambda = lambda;
  spec.standardize = false;  // the shared sum-score scale is the point
  spec.penalty_factors = Eigen::VectorXd::Ones(p + 1);
  spec.penalty_factors(0) = 0.0;  // xi is exempt
  return spec;
}
}  // namespace

EqualWeightsDesign reparametrize(const Dataset& data) {
  validate(data);
  if (data.p() < 2) throw InvalidInput("equal-weights reparametrization needs p >= 2");

  EqualWeightsDesign design;
  design.p = data.p();
  design.sum_score = data.predictors.rowwise().sum();
  const Eigen::VectorXd person_mean = design.sum_score / static_cast<double>(data.p());
  design.deviations = data.predictors.colwise() - person_mean;
  return design;
}

Dataset augmented_dataset(const Dataset& data) {
  const EqualWeightsDesign design = reparametrize(data);

  Dataset augmented;
  augmented.predictors.resize(data.n(), data.p() + 1);
  augmented.predictors.col(0) = design.sum_score;
  augmented.predictors.rightCols(data.p()) = design.deviations;
  augmented.response = data.response;
  augmented.column_names.reserve(static_cast<std::size_t>(data.p()) + 1);
  augmented.column_names.push_back("sum");
  for (const auto& name : effective_names(data)) augmented.column_names.push_back(name);
  return augmented;
}

CoefficientPath fit_equal_shrinkage(const Dataset& data, double alpha, const LambdaGrid& grid) {
  const Dataset augmented = augmented_dataset(data);
  return fit_path(augmented, equal_spec(alpha, data.p()), grid);
}

EqualWeightsFit fit_equal_ols(const Dataset& data) {
  const Dataset augmented = augmented_dataset(data);
  const LinearFit fit = fit_ols(augmented);

  EqualWeightsFit equal_fit;
  equal_fit.intercept = fit.intercept;
  equal_fit.xi = fit.coefficients(0);
  equal_fit.gammas = fit.coefficients.tail(fit.coefficients.size() - 1);
  return equal_fit;
}

LinearFit implied_coefficients(const EqualWeightsFit& fit) {
  if (fit.gammas.size() < 1) throw InvalidInput("equal-weights fit has no gamma block");
  const double gamma_mean = fit.gammas.mean();

  LinearFit implied;
  implied.intercept = fit.intercept;
  implied.coefficients = fit.gammas.array() + (fit.xi - gamma_mean);
  return implied;
}

EqualWeightsFit equal_fit_at(const CoefficientPath& path, std::size_t index) {
  if (index >= path.grid.size()) throw InvalidInput("path index out of range");
  const auto row = static_cast<Eigen::Index>(index);

  EqualWeightsFit fit;
  fit.intercept = path.intercepts(row);
  fit.xi = path.coefficients(row, 0);
  fit.gammas = path.coefficients.row(row).tail(path.coefficients.cols() - 1).transpose();
  return fit;
}

ModelComparison compare_models(const Dataset& data, double alpha, int folds, std::uint64_t seed) {
  validate(data, 3);
  if (data.p() < 2) throw InvalidInput("model comparison needs p >= 2");

  ModelComparison comparison;
  comparison.folds = kfold_split(data.n(), folds, seed);

  PenaltySpec standard_spec;
  standard_spec.alpha = alpha;
  comparison.standard_grid = make_default_grid(lambda_max(data, standard_spec));
  comparison.standard_curve =
      cross_validate_path(data, ModelKind::standard_lasso, alpha, comparison.standard_grid,
                          comparison.folds);
  comparison.standard_path = fit_path(data, standard_spec, comparison.standard_grid);

  const Dataset augmented = augmented_dataset(data);
  const PenaltySpec gamma_spec = equal_spec(alpha, data.p());
  comparison.equal_grid = make_default_grid(lambda_max(augmented, gamma_spec));
  comparison.equal_curve = cross_validate_path(data, ModelKind::equal_weights, alpha,
                                               comparison.equal_grid, comparison.folds);
  comparison.equal_path = fit_path(augmented, gamma_spec, comparison.equal_grid);

  comparison.ols = fit_ols(data);
  comparison.equal_ols = fit_equal_ols(data);
  comparison.standard_min_mse = comparison.standard_curve.mean_error[comparison.standard_curve.chosen_min];
  comparison.equal_min_mse = comparison.equal_curve.mean_error[comparison.equal_curve.chosen_min];
  return comparison;
}

void write_comparison_table_csv(std::ostream& out, const ModelComparison& comparison,
                                const std::vector<std::string>& names, int precision) {
  const auto std_min = static_cast<Eigen::Index>(comparison.standard_curve.chosen_min);
  const auto std_1se = static_cast<Eigen::Index>(comparison.standard_curve.chosen_1se);
  const LinearFit equal_ols_implied = implied_coefficients(comparison.equal_ols);
  const EqualWeightsFit equal_min = equal_fit_at(comparison.equal_path, comparison.equal_curve.chosen_min);
  const EqualWeightsFit equal_1se = equal_fit_at(comparison.equal_path, comparison.equal_curve.chosen_1se);
  const LinearFit equal_min_implied = implied_coefficients(equal_min);
  const LinearFit equal_1se_implied = implied_coefficients(equal_1se);

  const auto fmt = [&](double v) { return format_double(v, precision); };

  out << "term,ols,lasso_min,lasso_1se,equal_ols,equal_min,equal_1se\n";
  out << "intercept," << fmt(comparison.ols.intercept) << ','
      << fmt(comparison.standard_path.intercepts(std_min)) << ','
      << fmt(comparison.standard_path.intercepts(std_1se)) << ','
      << fmt(comparison.equal_ols.intercept) << ',' << fmt(equal_min.intercept) << ','
      << fmt(equal_1se.intercept) << '\n';
  // The standard parametrization has no sum-score term.
  out << "sum,,,," << fmt(comparison.equal_ols.xi) << ',' << fmt(equal_min.xi) << ','
      << fmt(equal_1se.xi) << '\n';
  for (Eigen::Index j = 0; j < comparison.ols.coefficients.size(); ++j) {
    out << names[static_cast<std::size_t>(j)] << ',' << fmt(comparison.ols.coefficients(j)) << ','
        << fmt(comparison.standard_path.coefficients(std_min, j)) << ','
        << fmt(comparison.standard_path.coefficients(std_1se, j)) << ','
        << fmt(equal_ols_implied.coefficients(j)) << ',' << fmt(equal_min_implied.coefficients(j))
        << ',' << fmt(equal_1se_implied.coefficients(j)) << '\n';
  }
}

void write_comparison_curve_csv(std::ostream& out, const CvCurve& curve,
                                const CoefficientPath& path, bool skip_first_column,
                                int precision) {
  if (curve.grid.size() != path.grid.size())
    throw InvalidInput("curve and path grids do not match");

  out << "lambda,mean_mse,se,n_nonzero\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    Eigen::Index nonzero = (path.coefficients.row(row).array() != 0.0).count();
    if (skip_first_column && path.coefficients(row, 0) != 0.0) --nonzero;
    out << format_double(curve.grid[i], precision) << ','
        << format_double(curve.mean_error[i], precision) << ','
        << format_double(curve.std_error[i], precision) << ',' << nonzero << '\n';
  }
}

}  // namespace reva
