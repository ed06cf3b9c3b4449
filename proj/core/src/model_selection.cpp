#include "reva/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "reva/csv.hpp"
#include "reva/equal_weights.hpp"
#include "reva/errors.hpp"
#include "reva/linear_model.hpp"
#include "reva/rng.hpp"

namespace reva {

FoldAssignment kfold_split(Eigen::Index n, int k, std::uint64_t seed) {
  if (k < 2) throw InvalidInput("cross-validation needs at least 2 folds");
  if (static_cast<Eigen::Index>(k) > n)
    throw InvalidInput("more folds than observations (" + std::to_string(k) + " > " +
                       std::to_string(n) + ")");

  std::vector<Eigen::Index> permutation(static_cast<std::size_t>(n));
  std::iota(permutation.begin(), permutation.end(), Eigen::Index{0});
  Rng rng(seed);
  for (std::size_t i = permutation.size() - 1; i > 0; --i)
    std::swap(permutation[i], permutation[rng.below(i + 1)]);

  FoldAssignment assignment;
  assignment.fold_of.resize(static_cast<std::size_t>(n));
  assignment.k = k;
  assignment.seed = seed;
  for (std::size_t i = 0; i < permutation.size(); ++i)
    assignment.fold_of[static_cast<std::size_t>(permutation[i])] = static_cast<int>(i % k);
  return assignment;
}

namespace {

void check_folds(const Dataset& data, const FoldAssignment& folds) {
  if (static_cast<Eigen::Index>(folds.fold_of.size()) != data.n())
    throw InvalidInput("fold assignment length does not match data");
}

std::pair<Dataset, Dataset> split_fold(const Dataset& data, const FoldAssignment& folds,
                                       int fold) {
  const Eigen::Index held = std::count(folds.fold_of.begin(), folds.fold_of.end(), fold);
  Dataset train, test;
  train.predictors.resize(data.n() - held, data.p());
  train.response.resize(data.n() - held);
  test.predictors.resize(held, data.p());
  test.response.resize(held);
  train.column_names = data.column_names;
  test.column_names = data.column_names;

  Eigen::Index ti = 0, hi = 0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    if (folds.fold_of[static_cast<std::size_t>(i)] == fold) {
      test.predictors.row(hi) = data.predictors.row(i);
      test.response(hi++) = data.response(i);
    } else {
      train.predictors.row(ti) = data.predictors.row(i);
      train.response(ti++) = data.response(i);
    }
  }
  return {std::move(train), std::move(test)};
}

void finalize_curve(CvCurve& curve, const Eigen::MatrixXd& fold_errors, int k) {
  const std::size_t m = curve.grid.size();
  curve.mean_error.resize(m);
  curve.std_error.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const double mean = fold_errors.col(col).mean();
    curve.mean_error[i] = mean;
    const double variance =
        (fold_errors.col(col).array() - mean).square().sum() / static_cast<double>(k - 1);
    curve.std_error[i] = std::sqrt(variance / static_cast<double>(k));
  }
  // Grids run most-regularized first, so strict < breaks ties that way.
  curve.chosen_min = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (curve.mean_error[i] < curve.mean_error[curve.chosen_min]) curve.chosen_min = i;
  curve.chosen_1se = select_1se(curve);
}

}  // namespace

CvCurve cross_validate_path(const Dataset& data, ModelKind kind, double alpha,
                            const LambdaGrid& grid, const FoldAssignment& folds) {
  validate(data, 3);
  check_folds(data, folds);

  const std::size_t m = grid.size();
  Eigen::MatrixXd fold_errors(folds.k, static_cast<Eigen::Index>(m));

  for (int fold = 0; fold < folds.k; ++fold) {
    auto [train, test] = split_fold(data, folds, fold);

    CoefficientPath path;
    Eigen::MatrixXd test_design;
    if (kind == ModelKind::standard_lasso) {
      PenaltySpec spec;
      spec.alpha = alpha;
      path = fit_path(train, spec, grid);
      test_design = test.predictors;
    } else {
      path = fit_equal_shrinkage(train, alpha, grid);
      test_design = augmented_dataset(test).predictors;
    }

    for (std::size_t i = 0; i < m; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const Eigen::VectorXd predicted =
          (test_design * path.coefficients.row(row).transpose()).array() + path.intercepts(row);
      fold_errors(fold, row) =
          (test.response - predicted).squaredNorm() / static_cast<double>(test.response.size());
    }
  }

  CvCurve curve;
  curve.grid = grid.values;
  finalize_curve(curve, fold_errors, folds.k);
  return curve;
}

std::size_t select_1se(const CvCurve& curve) {
  if (curve.grid.empty()) throw InvalidInput("empty CV curve");
  std::size_t min_index = 0;
  for (std::size_t i = 1; i < curve.grid.size(); ++i)
    if (curve.mean_error[i] < curve.mean_error[min_index]) min_index = i;

  const double threshold = curve.mean_error[min_index] + curve.std_error[min_index];
  for (std::size_t i = 0; i < min_index; ++i)
    if (curve.mean_error[i] <= threshold) return i;
  return min_index;
}

CvCurve cross_validate_shrinkage(const Dataset& data, std::span<const double> s_grid,
                                 const FoldAssignment& folds) {
  validate(data, 3);
  check_folds(data, folds);
  if (data.p() != 1) throw InvalidInput("shrinkage cross-validation requires p = 1");
  if (s_grid.empty()) throw InvalidInput("empty shrinkage grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] >= 0.0 && s_grid[i] <= 1.0))
      throw InvalidInput("shrinkage grid values must lie in [0, 1]");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1]))
      throw InvalidInput("shrinkage grid must be strictly increasing");
  }

  Eigen::MatrixXd fold_errors(folds.k, static_cast<Eigen::Index>(s_grid.size()));
  for (int fold = 0; fold < folds.k; ++fold) {
    auto [train, test] = split_fold(data, folds, fold);

    // apply_shrinkage at every s reuses one OLS pass: only the slope scaling
    // and the refit intercept depend on s.
    const LinearFit base = fit_ols(train);
    const double x_mean = train.predictors.col(0).mean();
    const double y_mean = train.response.mean();

    for (std::size_t i = 0; i < s_grid.size(); ++i) {
      const double slope = s_grid[i] * base.coefficients(0);
      const double intercept = y_mean - slope * x_mean;
      const Eigen::VectorXd predicted = (test.predictors.col(0) * slope).array() + intercept;
      fold_errors(fold, static_cast<Eigen::Index>(i)) =
          (test.response - predicted).squaredNorm() / static_cast<double>(test.response.size());
    }
  }

  CvCurve curve;
  curve.grid.assign(s_grid.begin(), s_grid.end());
  finalize_curve(curve, fold_errors, folds.k);
  return curve;
}

std::vector<double> default_s_grid() {
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / 100.0;
  return grid;
}

void write_curve_csv(std::ostream& out, const CvCurve& curve, const std::string& grid_name,
                     int precision) {
  out << grid_name << ",mean_error,std_error,is_min,is_1se\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i], precision) << ','
        << format_double(curve.mean_error[i], precision) << ','
        << format_double(curve.std_error[i], precision) << ',' << (i == curve.chosen_min ? 1 : 0)
        << ',' << (i == curve.chosen_1se ? 1 : 0) << '\n';
  }
}

}  // namespace reva
