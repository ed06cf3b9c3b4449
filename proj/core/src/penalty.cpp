#include "reva/penalty.hpp"

#include <cassert>
#include <cmath>
#include <ostream>

#include "reva/csv.hpp"
#include "reva/linear_model.hpp"

namespace reva {

namespace {

constexpr double kCoefChangeTol = 1e-7;
constexpr double kKktTol = 1e-6;
constexpr int kMaxCycles = 100000;

Eigen::VectorXd resolve_weights(const PenaltySpec& spec, Eigen::Index q) {
  if (spec.penalty_factors.size() == 0) return Eigen::VectorXd::Ones(q);
  if (spec.penalty_factors.size() != q)
    throw InvalidInput("penalty_factors length does not match predictor count");
  if ((spec.penalty_factors.array() < 0.0).any())
    throw InvalidInput("penalty_factors must be nonnegative");
  return spec.penalty_factors;
}

void check_spec(const PenaltySpec& spec, const Eigen::VectorXd& weights) {
  if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
    throw InvalidInput("alpha must lie in [0, 1]");
  if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda))
    throw InvalidInput("lambda must be a finite nonnegative value");
  if (spec.lambda > 0.0 && (weights.array() <= 0.0).all())
    throw InvalidInput("lambda > 0 requires at least one positive penalty factor");
}

// Centered (and optionally scaled) problem. The intercept is unpenalized, so
// solving on centered data is exact; it is recovered as ymean - b'xmeans.
struct Working {
  Eigen::MatrixXd x;            // n x q, centered, scaled if standardize
  Eigen::VectorXd y;            // centered response
  Eigen::RowVectorXd x_means;
  Eigen::VectorXd scale;        // 1.0 for zero-variance columns / standardize off
  Eigen::VectorXd sq_norm_n;    // (1/n) x_j'x_j after scaling
  Eigen::VectorXd weights;
  double y_mean = 0.0;
  double n = 0.0;

  Working(const Dataset& data, const PenaltySpec& spec) {
    validate(data, 2);
    weights = resolve_weights(spec, data.p());
    check_spec(spec, weights);

    n = static_cast<double>(data.n());
    x_means = data.predictors.colwise().mean();
    y_mean = data.response.mean();
    x = data.predictors.rowwise() - x_means;
    y = data.response.array() - y_mean;

    scale = Eigen::VectorXd::Ones(data.p());
    if (spec.standardize) {
      for (Eigen::Index j = 0; j < data.p(); ++j) {
        const double sd = std::sqrt(x.col(j).squaredNorm() / n);
        if (sd > 0.0) {
          scale(j) = sd;
          x.col(j) /= sd;
        }
      }
    }
    sq_norm_n = x.colwise().squaredNorm() / n;
  }

  double objective(const Eigen::VectorXd& beta, const Eigen::VectorXd& residual, double lambda,
                   double alpha) const {
    const double loss = residual.squaredNorm() / (2.0 * n);
    double penalty = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j)
      penalty += weights(j) * (alpha * std::abs(beta(j)) +
                               0.5 * (1.0 - alpha) * beta(j) * beta(j));
    return loss + lambda * penalty;
  }

  // Max subgradient-stationarity violation on the working scale.
  double kkt_violation(const Eigen::VectorXd& beta, const Eigen::VectorXd& residual,
                       double lambda, double alpha) const {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      const double gradient = x.col(j).dot(residual) / n;
      double violation;
      if (beta(j) != 0.0) {
        const double sign = beta(j) > 0.0 ? 1.0 : -1.0;
        violation = std::abs(gradient - lambda * weights(j) * alpha * sign -
                             lambda * weights(j) * (1.0 - alpha) * beta(j));
      } else {
        violation = std::max(0.0, std::abs(gradient) - lambda * weights(j) * alpha);
      }
      worst = std::max(worst, violation);
    }
    return worst;
  }
};

// Cyclic coordinate descent with residual updates, warm-startable. Stops once
// the max coefficient change over a full cycle is below tol and the KKT
// conditions hold at solver tolerance.
class CdSolver {
 public:
  CdSolver(const Dataset& data, const PenaltySpec& spec)
      : work_(data, spec), alpha_(spec.alpha), beta_(Eigen::VectorXd::Zero(data.p())) {}

  const Working& working() const { return work_; }

  // Solves at the given lambda starting from the current coefficients.
  PenalizedFit solve(double lambda) {
    Eigen::VectorXd residual = work_.y - work_.x * beta_;
#ifndef NDEBUG
    double previous_objective = work_.objective(beta_, residual, lambda, alpha_);
#endif
    int cycle = 0;
    bool converged = false;
    while (cycle < kMaxCycles) {
      ++cycle;
      double max_change = 0.0;
      for (Eigen::Index j = 0; j < beta_.size(); ++j) {
        if (work_.sq_norm_n(j) == 0.0) {
          beta_(j) = 0.0;  // centered column is identically zero
          continue;
        }
        const double z = work_.x.col(j).dot(residual) / work_.n + work_.sq_norm_n(j) * beta_(j);
        const double threshold = lambda * alpha_ * work_.weights(j);
        const double denom = work_.sq_norm_n(j) + lambda * (1.0 - alpha_) * work_.weights(j);
        const double updated = soft_threshold(z, threshold) / denom;
        const double change = updated - beta_(j);
        if (change != 0.0) {
          residual -= work_.x.col(j) * change;
          beta_(j) = updated;
          max_change = std::max(max_change, std::abs(change));
        }
      }
#ifndef NDEBUG
      const double current_objective = work_.objective(beta_, residual, lambda, alpha_);
      assert(current_objective <= previous_objective + 1e-10 * (1.0 + std::abs(previous_objective)));
      previous_objective = current_objective;
#endif
      if (max_change < kCoefChangeTol &&
          work_.kkt_violation(beta_, residual, lambda, alpha_) <= 0.5 * kKktTol) {
        converged = true;
        break;
      }
    }

    PenalizedFit fit = current_fit(cycle);
    if (!converged)
      throw ConvergenceError("coordinate descent did not converge in " +
                                 std::to_string(kMaxCycles) + " cycles",
                             std::move(fit));
    return fit;
  }

 private:
  PenalizedFit current_fit(int cycles) const {
    PenalizedFit fit;
    fit.coefficients = beta_.array() / work_.scale.array();
    fit.intercept = work_.y_mean - work_.x_means.dot(fit.coefficients);
    fit.cycles = cycles;
    return fit;
  }

  Working work_;
  double alpha_;
  Eigen::VectorXd beta_;  // working scale
};

}  // namespace

PenalizedFit fit_penalized(const Dataset& data, const PenaltySpec& spec) {
  CdSolver solver(data, spec);
  return solver.solve(spec.lambda);
}

double lambda_max(const Dataset& data, const PenaltySpec& spec) {
  Working work(data, spec);
  if (!(spec.alpha > 0.0))
    throw InvalidInput("lambda_max is finite only for alpha > 0; supply a grid for pure ridge");
  if ((work.weights.array() <= 0.0).all())
    throw InvalidInput("lambda_max needs at least one positive penalty factor");

  // Residual after fitting only the unpenalized block (plus intercept).
  Eigen::VectorXd residual = work.y;
  std::vector<Eigen::Index> unpenalized;
  for (Eigen::Index j = 0; j < work.weights.size(); ++j)
    if (work.weights(j) == 0.0) unpenalized.push_back(j);
  if (!unpenalized.empty()) {
    Eigen::MatrixXd block(work.x.rows(), static_cast<Eigen::Index>(unpenalized.size()));
    for (std::size_t k = 0; k < unpenalized.size(); ++k)
      block.col(static_cast<Eigen::Index>(k)) = work.x.col(unpenalized[k]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    residual -= block * svd.solve(work.y);
  }

  double result = 0.0;
  for (Eigen::Index j = 0; j < work.weights.size(); ++j) {
    if (work.weights(j) <= 0.0) continue;
    const double candidate =
        std::abs(work.x.col(j).dot(residual)) / (work.n * spec.alpha * work.weights(j));
    result = std::max(result, candidate);
  }
  return result;
}

LambdaGrid make_default_grid(double lambda_max_value, std::size_t size, double floor_ratio) {
  if (!(lambda_max_value > 0.0))
    throw InvalidInput("grid needs a positive lambda_max; got " +
                       std::to_string(lambda_max_value));
  if (size < 1) throw InvalidInput("grid size must be positive");
  if (!(floor_ratio > 0.0 && floor_ratio < 1.0))
    throw InvalidInput("floor ratio must lie in (0, 1)");

  LambdaGrid grid;
  grid.values.reserve(size);
  if (size == 1) {
    grid.values.push_back(lambda_max_value);
    return grid;
  }
  const double log_top = std::log(lambda_max_value);
  const double log_step = std::log(floor_ratio) / static_cast<double>(size - 1);
  for (std::size_t i = 0; i < size; ++i)
    grid.values.push_back(std::exp(log_top + log_step * static_cast<double>(i)));
  return grid;
}

namespace {
void check_grid(const LambdaGrid& grid) {
  if (grid.values.empty()) throw InvalidInput("lambda grid is empty");
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    if (!(grid.values[i] > 0.0)) throw InvalidInput("lambda grid values must be positive");
    if (i > 0 && !(grid.values[i] < grid.values[i - 1]))
      throw InvalidInput("lambda grid must be strictly decreasing");
  }
}
}  // namespace

CoefficientPath fit_path(const Dataset& data, const PenaltySpec& spec_template,
                         const LambdaGrid& grid) {
  check_grid(grid);
  CdSolver solver(data, spec_template);

  CoefficientPath path;
  path.grid = grid;
  path.intercepts.resize(static_cast<Eigen::Index>(grid.size()));
  path.coefficients.resize(static_cast<Eigen::Index>(grid.size()), data.p());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PenalizedFit fit = solver.solve(grid.values[i]);
    path.intercepts(static_cast<Eigen::Index>(i)) = fit.intercept;
    path.coefficients.row(static_cast<Eigen::Index>(i)) = fit.coefficients.transpose();
  }
  return path;
}

KktReport kkt_check(const Dataset& data, const PenaltySpec& spec, double intercept,
                    const Eigen::VectorXd& coefficients) {
  Working work(data, spec);
  if (coefficients.size() != data.p())
    throw InvalidInput("solution length does not match predictor count");

  const Eigen::VectorXd beta_working = coefficients.array() * work.scale.array();
  const Eigen::VectorXd residual = work.y - work.x * beta_working;

  double worst = work.kkt_violation(beta_working, residual, spec.lambda, spec.alpha);
  // Stationarity of the unpenalized intercept.
  worst = std::max(worst, std::abs(intercept - (work.y_mean - work.x_means.dot(coefficients))));
  return {worst <= kKktTol, worst};
}

void write_path_csv(std::ostream& out, const CoefficientPath& path,
                    const std::vector<std::string>& coef_names, int precision) {
  out << "lambda,intercept";
  for (const auto& name : coef_names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < path.grid.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out << format_double(path.grid.values[i], precision) << ','
        << format_double(path.intercepts(row), precision);
    for (Eigen::Index j = 0; j < path.coefficients.cols(); ++j)
      out << ',' << format_double(path.coefficients(row, j), precision);
    out << '\n';
  }
}

}  // namespace reva
