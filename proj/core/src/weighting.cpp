#include "reva/weighting.hpp"

#include <cmath>
#include <ostream>

#include "reva/csv.hpp"
#include "reva/errors.hpp"

namespace reva {

std::string to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::unit: return "unit";
    case WeightScheme::sd: return "sd";
    case WeightScheme::inverse_sd: return "inverse_sd";
    case WeightScheme::least_squares: return "least_squares";
  }
  throw InvalidInput("unknown weighting scheme");
}

namespace {
Eigen::VectorXd column_sds(const Dataset& data) {
  const Eigen::Index n = data.n();
  if (n < 2) throw InvalidInput("column standard deviations need n >= 2");
  const Eigen::RowVectorXd means = data.predictors.colwise().mean();
  Eigen::VectorXd sds(data.p());
  for (Eigen::Index j = 0; j < data.p(); ++j) {
    const double ss = (data.predictors.col(j).array() - means(j)).square().sum();
    sds(j) = std::sqrt(ss / static_cast<double>(n - 1));
    if (sds(j) <= 0.0)
      throw InvalidInput("column " + std::to_string(j + 1) +
                         " has zero variance; sd-based weights undefined");
  }
  return sds;
}

struct SimpleFit {
  double intercept = 0.0;
  double slope = 0.0;
};

// y ~ intercept + slope * x; slope 0 on a constant composite.
SimpleFit calibrate(const Eigen::VectorXd& composite, const Eigen::VectorXd& response) {
  const double c_mean = composite.mean();
  const double y_mean = response.mean();
  const Eigen::ArrayXd centered = composite.array() - c_mean;
  const double variance = centered.square().sum();

  SimpleFit fit;
  if (variance > 0.0) fit.slope = (centered * (response.array() - y_mean)).sum() / variance;
  fit.intercept = y_mean - fit.slope * c_mean;
  return fit;
}
}  // namespace

Eigen::VectorXd scheme_weights(const Dataset& data, WeightScheme scheme) {
  validate(data);
  switch (scheme) {
    case WeightScheme::unit: return Eigen::VectorXd::Ones(data.p());
    case WeightScheme::sd: return column_sds(data);
    case WeightScheme::inverse_sd: return column_sds(data).cwiseInverse();
    case WeightScheme::least_squares: return fit_ols(data).coefficients;
  }
  throw InvalidInput("unknown weighting scheme");
}

std::array<SchemeEvaluation, 4> evaluate_schemes(const Dataset& train, const Dataset& test) {
  validate(train, 2);
  validate(test, 2);
  if (train.p() != test.p()) throw InvalidInput("train/test predictor counts differ");

  std::array<SchemeEvaluation, 4> evaluations;
  for (std::size_t i = 0; i < kAllWeightSchemes.size(); ++i) {
    const WeightScheme scheme = kAllWeightSchemes[i];
    const Eigen::VectorXd weights = scheme_weights(train, scheme);
    const SimpleFit fit = calibrate(train.predictors * weights, train.response);
    const Eigen::VectorXd predicted =
        ((test.predictors * weights) * fit.slope).array() + fit.intercept;
    evaluations[i] = {scheme, evaluate(test.response, predicted)};
  }
  return evaluations;
}

void write_schemes_csv(std::ostream& out, const std::array<SchemeEvaluation, 4>& evaluations,
                       int precision) {
  out << "scheme,mse,pearson_r\n";
  for (const auto& evaluation : evaluations) {
    out << to_string(evaluation.scheme) << ',' << format_double(evaluation.metrics.mse, precision)
        << ',';
    if (evaluation.metrics.pearson_r)
      out << format_double(*evaluation.metrics.pearson_r, precision);
    else
      out << "NA";
    out << '\n';
  }
}

}  // namespace reva
