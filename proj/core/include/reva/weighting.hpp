#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "reva/dataset.hpp"
#include "reva/linear_model.hpp"

namespace reva {

/// The four classical composite-scoring schemes.
enum class WeightScheme { unit, sd, inverse_sd, least_squares };

inline constexpr std::array<WeightScheme, 4> kAllWeightSchemes = {
    WeightScheme::unit, WeightScheme::sd, WeightScheme::inverse_sd,
    WeightScheme::least_squares};

std::string to_string(WeightScheme scheme);

/// unit -> ones; sd -> column standard deviations (n-1 denominator);
/// inverse_sd -> their reciprocals; least_squares -> fit_ols coefficients.
Eigen::VectorXd scheme_weights(const Dataset& data, WeightScheme scheme);

struct SchemeEvaluation {
  WeightScheme scheme;
  PredictionMetrics metrics;
};

/// For each scheme: composite c = X w on train, calibrate y ~ c by simple
/// regression on train, evaluate mse and correlation on test. Calibration
/// puts all schemes on a fair scale before the mse comparison.
std::array<SchemeEvaluation, 4> evaluate_schemes(const Dataset& train, const Dataset& test);

/// (scheme, mse, pearson_r) rows.
void write_schemes_csv(std::ostream& out, const std::array<SchemeEvaluation, 4>& evaluations,
                       int precision = 6);

}  // namespace reva
