#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "reva/dataset.hpp"
#include "reva/errors.hpp"

namespace reva {

/// Elastic-net penalty specification. The penalized objective is
///
///   (1/2n) sum_i (y_i - a - x_i' b)^2
///     + lambda * sum_j w_j * (alpha |b_j| + (1-alpha)/2 b_j^2)
///
/// The 1/(2n) loss scaling makes lambda comparable across sample sizes.
/// The intercept is never penalized. penalty_factors w_j allow exempting
/// individual coefficients (w_j = 0). With standardize on, columns are scaled
/// to unit 1/n-variance internally and the penalty applies on that scale;
/// returned coefficients are always on the original scale.
struct PenaltySpec {
  double alpha = 1.0;               // 1 = pure L1, 0 = pure L2
  double lambda = 0.0;
  Eigen::VectorXd penalty_factors;  // empty = all ones
  bool standardize = true;
};

struct LambdaGrid {
  std::vector<double> values;  // strictly decreasing, all positive

  std::size_t size() const { return values.size(); }
};

/// Path solutions indexed by lambda, original scale.
struct CoefficientPath {
  LambdaGrid grid;
  Eigen::VectorXd intercepts;   // m
  Eigen::MatrixXd coefficients; // m x q, row i solves at grid.values[i]

  Eigen::Index n_nonzero(Eigen::Index row) const {
    return (coefficients.row(row).array() != 0.0).count();
  }
};

struct PenalizedFit {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
  int cycles = 0;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, PenalizedFit best)
      : Error(what), best_iterate(std::move(best)) {}
  PenalizedFit best_iterate;
};

struct KktReport {
  bool ok = false;
  double max_violation = 0.0;
};

/// sign(z) * max(|z| - t, 0).
inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

/// Cyclic coordinate descent, fixed column order. Convergence is declared
/// when the max absolute coefficient change over a full cycle drops below
/// 1e-7 (working scale). Throws ConvergenceError after 100000 cycles.
PenalizedFit fit_penalized(const Dataset& data, const PenaltySpec& spec);

/// Smallest lambda at which every penalized coefficient is zero, given the
/// unpenalized block at its partial least-squares solution:
/// max over penalized j of |x_j' r| / (n * alpha * w_j). Returns 0 when no
/// penalized column correlates with that residual. Requires alpha > 0.
double lambda_max(const Dataset& data, const PenaltySpec& spec);

/// size log-spaced values from lambda_max down to lambda_max * floor_ratio.
LambdaGrid make_default_grid(double lambda_max_value, std::size_t size = 100,
                             double floor_ratio = 1e-3);

/// Solutions for each grid lambda, warm-starting from the previous one.
CoefficientPath fit_path(const Dataset& data, const PenaltySpec& spec_template,
                         const LambdaGrid& grid);

/// Subgradient stationarity at tolerance 1e-6, on the scale the solver used
/// (spec.standardize decides). Coefficients are given on the original scale.
KktReport kkt_check(const Dataset& data, const PenaltySpec& spec, double intercept,
                    const Eigen::VectorXd& coefficients);

/// One row per lambda: lambda, intercept, coef_1..coef_q.
void write_path_csv(std::ostream& out, const CoefficientPath& path,
                    const std::vector<std::string>& coef_names, int precision = 6);

}  // namespace reva
