#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "reva/model_selection.hpp"
#include "reva/rng.hpp"

namespace reva {

/// Classical-test-theory reliability experiment: per (n, r, rho) cell,
/// cross-validate the shrinkage factor on a calibration sample and measure
/// prediction error on an independent validation sample.
struct SimConfig {
  std::vector<int> n_grid = {25, 50, 100, 200};
  std::vector<double> r_grid = {0.20, 0.25, 0.30, 0.35, 0.40};
  std::vector<double> rho_grid = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5};
  int replications = 1000;
  int validation_n = 1000;
  int folds = 10;
  std::vector<double> s_grid = default_s_grid();
  std::uint64_t master_seed = 1;
  int threads = 1;
};

void validate(const SimConfig& config);

/// True scores T, observed scores X = T + E, criterion Y = r T + eps.
struct GeneratedSample {
  Eigen::VectorXd true_score;
  Eigen::VectorXd observed_score;
  Eigen::VectorXd criterion;
};

/// sigma_E^2 = (1 - rho) / rho for unit true-score variance.
double error_variance_from_reliability(double rho);

/// T ~ N(0,1); Y = r T + eps with eps ~ N(0, 1 - r^2); X = T + E with
/// E ~ N(0, (1-rho)/rho). Population var(Y) = var(T) = 1, cor(X,Y) = r sqrt(rho).
GeneratedSample generate_sample(int n, double r, double rho, Rng& rng);

struct ReplicationResult {
  double s_opt = 0.0;
  double prediction_error = 0.0;
};

/// One replication: CV-select s on a fresh calibration sample, refit on the
/// whole sample at that s, measure mse on a fresh validation sample. Fold
/// assignment is re-randomized from the replication's generator.
ReplicationResult run_replication(int n, double r, double rho, int folds,
                                  std::span<const double> s_grid, int validation_n, Rng& rng);

/// Quantiles (25/50/75, type-7 interpolation) per cell.
struct SimCellSummary {
  int n = 0;
  double r = 0.0;
  double rho = 0.0;
  double s_q25 = 0, s_median = 0, s_q75 = 0;
  double pe_q25 = 0, pe_median = 0, pe_q75 = 0;
  int replications_used = 0;
};

/// Runs every cell. Replication seeds derive from
/// (master_seed, n, r, rho, replication index), so results do not depend on
/// the thread count or on which cells are re-run. on_cell, when given, fires
/// after each completed cell in grid order (for incremental flushing).
std::vector<SimCellSummary> run_experiment(
    const SimConfig& config,
    const std::function<void(const SimCellSummary&)>& on_cell = {});

/// Derived seed for one replication; exposed so partial reruns agree.
std::uint64_t replication_seed(std::uint64_t master_seed, int n, double r, double rho,
                               int replication);

/// (n, r, rho, s_q25, s_median, s_q75, pe_q25, pe_median, pe_q75) rows.
void write_summary_csv_header(std::ostream& out);
void write_summary_csv_row(std::ostream& out, const SimCellSummary& cell, int precision = 6);

}  // namespace reva
