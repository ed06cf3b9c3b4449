#pragma once

#include "reva/dataset.hpp"
#include "reva/linear_model.hpp"

namespace reva {

/// Multiplier in [0, 1] applied to the least-squares slope.
struct ShrinkageFactor {
  double s = 1.0;
};

/// Population slope and the sampling variance of its OLS estimate.
struct SlopeSamplingModel {
  double beta = 0.0;
  double sigma2_b = 0.0;
};

struct OptimalShrinkage {
  ShrinkageFactor factor;
  bool degenerate = false;  // true when beta == 0 (all-bias solution is exact)
};

/// E(sb - beta)^2 = s^2 sigma_b^2 + (1-s)^2 beta^2.
double expected_squared_error(ShrinkageFactor s, const SlopeSamplingModel& model);

/// s = 1 / (1 + sigma_b^2 / beta^2); always < 1 for sigma2_b > 0.
OptimalShrinkage optimal_s_sampling(const SlopeSamplingModel& model);

/// s = 1 / (1 + ((1 - r^2) / r^2) / (n - 3)). Requires 0 < |r| < 1 and n >= 4.
ShrinkageFactor optimal_s_population(double r, long n);

/// Simple regression (p = 1) with the slope multiplied by s and the intercept
/// refit at the shrunken slope: intercept = mean(y) - s * b * mean(x). At
/// s = 0 this degenerates to the intercept-only fit.
LinearFit apply_shrinkage(const Dataset& data, ShrinkageFactor s);

}  // namespace reva
