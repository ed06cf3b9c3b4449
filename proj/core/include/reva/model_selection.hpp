#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "reva/dataset.hpp"
#include "reva/penalty.hpp"

namespace reva {

/// Deterministic fold assignment: a seeded permutation dealt round-robin,
/// so fold sizes differ by at most one.
struct FoldAssignment {
  std::vector<int> fold_of;  // length n, values in [0, k)
  int k = 0;
  std::uint64_t seed = 0;
};

FoldAssignment kfold_split(Eigen::Index n, int k, std::uint64_t seed);

/// Cross-validation curve over a grid ordered from most to least regularized
/// (descending lambda, or ascending shrinkage factor s). std_error is the
/// standard deviation of the k fold means divided by sqrt(k). Ties in the
/// minimum break toward more regularization.
struct CvCurve {
  std::vector<double> grid;
  std::vector<double> mean_error;
  std::vector<double> std_error;
  std::size_t chosen_min = 0;
  std::size_t chosen_1se = 0;
};

enum class ModelKind { standard_lasso, equal_weights };

/// Per lambda: fit on k-1 folds, held-out mse on the remaining fold, averaged
/// over folds. The grid must come from the full data and is shared across
/// folds. equal_weights fits the sum-score + deviation design with the
/// gamma block penalized (standardize off); standard_lasso standardizes.
CvCurve cross_validate_path(const Dataset& data, ModelKind kind, double alpha,
                            const LambdaGrid& grid, const FoldAssignment& folds);

/// Most-regularized index whose mean error is within one standard error of
/// the minimum.
std::size_t select_1se(const CvCurve& curve);

/// CV for the scalar shrinkage factor on simple regression (p = 1).
CvCurve cross_validate_shrinkage(const Dataset& data, std::span<const double> s_grid,
                                 const FoldAssignment& folds);

/// {0.00, 0.01, ..., 1.00}.
std::vector<double> default_s_grid();

/// (grid_value, mean_error, std_error, is_min, is_1se) rows.
void write_curve_csv(std::ostream& out, const CvCurve& curve,
                     const std::string& grid_name, int precision = 6);

}  // namespace reva
