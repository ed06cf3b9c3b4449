#include "reva/shrinkage.hpp"

#include <cmath>

#include "reva/errors.hpp"

namespace reva {

namespace {
void check_factor(ShrinkageFactor s) {
  if (!(s.s >= 0.0 && s.s <= 1.0))
    throw InvalidInput("shrinkage factor must lie in [0, 1], got " + std::to_string(s.s));
}

void check_model(const SlopeSamplingModel& model) {
  if (!(model.sigma2_b >= 0.0)) throw InvalidInput("sampling variance must be nonnegative");
  if (!std::isfinite(model.beta) || !std::isfinite(model.sigma2_b))
    throw InvalidInput("slope sampling model must be finite");
}
}  // namespace

double expected_squared_error(ShrinkageFactor s, const SlopeSamplingModel& model) {
  check_factor(s);
  check_model(model);
  const double bias = (1.0 - s.s) * model.beta;
  return s.s * s.s * model.sigma2_b + bias * bias;
}

OptimalShrinkage optimal_s_sampling(const SlopeSamplingModel& model) {
  check_model(model);
  if (model.beta == 0.0) return {ShrinkageFactor{0.0}, true};
  const double noise_ratio = model.sigma2_b / (model.beta * model.beta);
  return {ShrinkageFactor{1.0 / (1.0 + noise_ratio)}, false};
}

ShrinkageFactor optimal_s_population(double r, long n) {
  if (n <= 3) throw InvalidInput("population shrinkage formula needs n >= 4");
  const double r2 = r * r;
  if (!(r2 > 0.0) || !(r2 < 1.0))
    throw InvalidInput("population correlation must satisfy 0 < |r| < 1");
  const double noise_ratio = (1.0 - r2) / r2;
  return ShrinkageFactor{1.0 / (1.0 + noise_ratio / static_cast<double>(n - 3))};
}

LinearFit apply_shrinkage(const Dataset& data, ShrinkageFactor s) {
  check_factor(s);
  validate(data, 2);
  if (data.p() != 1) throw InvalidInput("apply_shrinkage requires a single predictor");

  const LinearFit ols = fit_ols(data);
  const double shrunken_slope = s.s * ols.coefficients(0);

  LinearFit fit;
  fit.coefficients = Eigen::VectorXd::Constant(1, shrunken_slope);
  fit.intercept = data.response.mean() - shrunken_slope * data.predictors.col(0).mean();
  return fit;
}

}  // namespace reva
