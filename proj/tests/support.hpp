// Shared test utilities: deterministic instance generators and independent
// oracles (normal equations via Gaussian elimination, brute-force penalized
// minimization). The oracles deliberately avoid the library's solver paths.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "reva/dataset.hpp"
#include "reva/rng.hpp"

namespace testsupport {

struct RandomInstance {
  reva::Dataset data;
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
};

inline RandomInstance random_instance(reva::Rng& rng, Eigen::Index n, Eigen::Index p,
                                      double noise_sd = 0.5) {
  RandomInstance instance;
  instance.data.predictors.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) instance.data.predictors(i, j) = rng.normal();
  instance.intercept = rng.normal(0.0, 2.0);
  instance.coefficients.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) instance.coefficients(j) = rng.normal(0.0, 1.5);
  instance.data.response.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    instance.data.response(i) = instance.intercept +
                                instance.data.predictors.row(i).dot(instance.coefficients) +
                                noise_sd * rng.normal();
  return instance;
}

// Least squares through the normal equations, solved by plain Gaussian
// elimination with partial pivoting. Requires a full-rank design.
// Returns (intercept, coef_1..coef_p).
inline std::vector<double> normal_equations_fit(const Eigen::MatrixXd& predictors,
                                                const Eigen::VectorXd& response) {
  const std::size_t n = static_cast<std::size_t>(predictors.rows());
  const std::size_t q = static_cast<std::size_t>(predictors.cols()) + 1;

  // A = [1 X], G = A'A, h = A'y, all built with plain loops.
  std::vector<std::vector<double>> design(n, std::vector<double>(q, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < q; ++j)
      design[i][j] = predictors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1));

  std::vector<std::vector<double>> gram(q, std::vector<double>(q, 0.0));
  std::vector<double> moment(q, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < q; ++a) {
      moment[a] += design[i][a] * response(static_cast<Eigen::Index>(i));
      for (std::size_t b = 0; b < q; ++b) gram[a][b] += design[i][a] * design[i][b];
    }
  }

  for (std::size_t col = 0; col < q; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < q; ++row)
      if (std::abs(gram[row][col]) > std::abs(gram[pivot][col])) pivot = row;
    if (gram[pivot][col] == 0.0) throw std::runtime_error("oracle: singular normal equations");
    std::swap(gram[col], gram[pivot]);
    std::swap(moment[col], moment[pivot]);
    for (std::size_t row = col + 1; row < q; ++row) {
      const double factor = gram[row][col] / gram[col][col];
      for (std::size_t k = col; k < q; ++k) gram[row][k] -= factor * gram[col][k];
      moment[row] -= factor * moment[col];
    }
  }
  std::vector<double> solution(q, 0.0);
  for (std::size_t row = q; row-- > 0;) {
    double value = moment[row];
    for (std::size_t k = row + 1; k < q; ++k) value -= gram[row][k] * solution[k];
    solution[row] = value / gram[row][row];
  }
  return solution;
}

// Brute-force elastic-net minimizer for p <= 2 by coarse-to-fine grid search
// over the centered problem; convexity keeps refinement safe.
struct BruteForceFit {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
};

inline BruteForceFit brute_force_penalized(const Eigen::MatrixXd& predictors,
                                           const Eigen::VectorXd& response, double lambda,
                                           double alpha, const Eigen::VectorXd& weights,
                                           double search_radius) {
  const Eigen::Index p = predictors.cols();
  if (p > 2) throw std::runtime_error("oracle: brute force limited to p <= 2");
  const double n = static_cast<double>(predictors.rows());
  const Eigen::RowVectorXd x_means = predictors.colwise().mean();
  const Eigen::MatrixXd centered = predictors.rowwise() - x_means;
  const double y_mean = response.mean();
  const Eigen::VectorXd y_centered = response.array() - y_mean;

  const auto objective = [&](const Eigen::VectorXd& beta) {
    double value = (y_centered - centered * beta).squaredNorm() / (2.0 * n);
    for (Eigen::Index j = 0; j < p; ++j)
      value += lambda * weights(j) *
               (alpha * std::abs(beta(j)) + 0.5 * (1.0 - alpha) * beta(j) * beta(j));
    return value;
  };

  Eigen::VectorXd center = Eigen::VectorXd::Zero(p);
  double half_range = search_radius;
  constexpr int kPointsPerAxis = 25;
  for (int level = 0; level < 12; ++level) {
    const double step = 2.0 * half_range / (kPointsPerAxis - 1);
    Eigen::VectorXd best = center;
    double best_value = objective(center);
    Eigen::VectorXd candidate(p);
    if (p == 1) {
      for (int a = 0; a < kPointsPerAxis; ++a) {
        candidate(0) = center(0) - half_range + a * step;
        const double value = objective(candidate);
        if (value < best_value) {
          best_value = value;
          best = candidate;
        }
      }
    } else {
      for (int a = 0; a < kPointsPerAxis; ++a) {
        for (int b = 0; b < kPointsPerAxis; ++b) {
          candidate(0) = center(0) - half_range + a * step;
          candidate(1) = center(1) - half_range + b * step;
          const double value = objective(candidate);
          if (value < best_value) {
            best_value = value;
            best = candidate;
          }
        }
      }
    }
    center = best;
    half_range = 3.0 * step;  // keep a safety margin around the best cell
  }

  BruteForceFit fit;
  fit.coefficients = center;
  fit.intercept = y_mean - x_means.dot(center);
  return fit;
}

// Centered design with orthogonal +-1 columns, so x_j'x_j = n exactly.
inline Eigen::MatrixXd orthonormal_design() {
  Eigen::MatrixXd design(8, 3);
  const double signs[8][3] = {{+1, +1, +1}, {-1, +1, +1}, {+1, -1, +1}, {-1, -1, +1},
                              {+1, +1, -1}, {-1, +1, -1}, {+1, -1, -1}, {-1, -1, -1}};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 3; ++j) design(i, j) = signs[i][j];
  return design;
}

}  // namespace testsupport
