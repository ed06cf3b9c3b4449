#include "reva/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "reva/csv.hpp"
#include "reva/errors.hpp"
#include "reva/linear_model.hpp"
#include "reva/shrinkage.hpp"

namespace reva {

void validate(const SimConfig& config) {
  if (config.n_grid.empty() || config.r_grid.empty() || config.rho_grid.empty())
    throw InvalidInput("simulation grids must be nonempty");
  for (int n : config.n_grid)
    if (n < 4) throw InvalidInput("calibration sample sizes must be at least 4");
  for (double r : config.r_grid)
    if (!(r > 0.0 && r < 1.0)) throw InvalidInput("effect sizes must lie in (0, 1)");
  for (double rho : config.rho_grid)
    if (!(rho > 0.0 && rho <= 1.0)) throw InvalidInput("reliabilities must lie in (0, 1]");
  if (config.replications < 1) throw InvalidInput("replications must be positive");
  if (config.validation_n < 2) throw InvalidInput("validation_n must be at least 2");
  if (config.folds < 2) throw InvalidInput("folds must be at least 2");
  for (int n : config.n_grid)
    if (config.folds > n) throw InvalidInput("folds exceed the smallest sample size");
  if (config.s_grid.empty()) throw InvalidInput("shrinkage grid must be nonempty");
  if (config.threads < 1) throw InvalidInput("threads must be positive");
}

double error_variance_from_reliability(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw InvalidInput("reliability must lie in (0, 1]");
  return (1.0 - rho) / rho;
}

GeneratedSample generate_sample(int n, double r, double rho, Rng& rng) {
  if (n < 1) throw InvalidInput("sample size must be positive");
  if (!(r > 0.0 && r < 1.0)) throw InvalidInput("effect size must lie in (0, 1)");
  const double criterion_noise_sd = std::sqrt(1.0 - r * r);
  const double error_sd = std::sqrt(error_variance_from_reliability(rho));

  GeneratedSample sample;
  sample.true_score.resize(n);
  sample.observed_score.resize(n);
  sample.criterion.resize(n);
  for (int i = 0; i < n; ++i) sample.true_score(i) = rng.normal();
  for (int i = 0; i < n; ++i)
    sample.criterion(i) = r * sample.true_score(i) + criterion_noise_sd * rng.normal();
  for (int i = 0; i < n; ++i)
    sample.observed_score(i) = sample.true_score(i) + error_sd * rng.normal();
  return sample;
}

ReplicationResult run_replication(int n, double r, double rho, int folds,
                                  std::span<const double> s_grid, int validation_n, Rng& rng) {
  const GeneratedSample calibration = generate_sample(n, r, rho, rng);
  const std::uint64_t fold_seed = rng.next_u64();

  Dataset calibration_data;
  calibration_data.predictors = calibration.observed_score;
  calibration_data.response = calibration.criterion;

  const FoldAssignment assignment = kfold_split(n, folds, fold_seed);
  const CvCurve curve = cross_validate_shrinkage(calibration_data, s_grid, assignment);
  const double s_opt = curve.grid[curve.chosen_min];

  const LinearFit fit = apply_shrinkage(calibration_data, ShrinkageFactor{s_opt});

  const GeneratedSample validation = generate_sample(validation_n, r, rho, rng);
  const Eigen::VectorXd predicted = predict(fit, validation.observed_score);

  ReplicationResult result;
  result.s_opt = s_opt;
  result.prediction_error = evaluate(validation.criterion, predicted).mse;
  return result;
}

std::uint64_t replication_seed(std::uint64_t master_seed, int n, double r, double rho,
                               int replication) {
  return mix_seed({master_seed, static_cast<std::uint64_t>(n), seed_component(r),
                   seed_component(rho), static_cast<std::uint64_t>(replication)});
}

namespace {

// Type-7 quantile (linear interpolation between order statistics).
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

void run_block(const SimConfig& config, int n, double r, double rho, int first, int last,
               std::vector<ReplicationResult>& results, std::exception_ptr& error,
               std::mutex& error_mutex) {
  try {
    for (int rep = first; rep < last; ++rep) {
      Rng rng(replication_seed(config.master_seed, n, r, rho, rep));
      results[static_cast<std::size_t>(rep)] = run_replication(
          n, r, rho, config.folds, config.s_grid, config.validation_n, rng);
    }
  } catch (...) {
    const std::lock_guard<std::mutex> lock(error_mutex);
    if (!error) error = std::current_exception();
  }
}

SimCellSummary summarize_cell(int n, double r, double rho,
                              const std::vector<ReplicationResult>& results) {
  std::vector<double> s_values, pe_values;
  s_values.reserve(results.size());
  pe_values.reserve(results.size());
  for (const auto& result : results) {
    s_values.push_back(result.s_opt);
    pe_values.push_back(result.prediction_error);
  }
  std::sort(s_values.begin(), s_values.end());
  std::sort(pe_values.begin(), pe_values.end());

  SimCellSummary cell;
  cell.n = n;
  cell.r = r;
  cell.rho = rho;
  cell.s_q25 = quantile_sorted(s_values, 0.25);
  cell.s_median = quantile_sorted(s_values, 0.50);
  cell.s_q75 = quantile_sorted(s_values, 0.75);
  cell.pe_q25 = quantile_sorted(pe_values, 0.25);
  cell.pe_median = quantile_sorted(pe_values, 0.50);
  cell.pe_q75 = quantile_sorted(pe_values, 0.75);
  cell.replications_used = static_cast<int>(results.size());
  return cell;
}

}  // namespace

std::vector<SimCellSummary> run_experiment(
    const SimConfig& config, const std::function<void(const SimCellSummary&)>& on_cell) {
  validate(config);

  std::vector<SimCellSummary> summaries;
  summaries.reserve(config.n_grid.size() * config.r_grid.size() * config.rho_grid.size());

  for (int n : config.n_grid) {
    for (double r : config.r_grid) {
      for (double rho : config.rho_grid) {
        std::vector<ReplicationResult> results(static_cast<std::size_t>(config.replications));
        const int threads = std::min(config.threads, config.replications);
        if (threads <= 1) {
          std::exception_ptr error;
          std::mutex error_mutex;
          run_block(config, n, r, rho, 0, config.replications, results, error, error_mutex);
          if (error) std::rethrow_exception(error);
        } else {
          std::exception_ptr error;
          std::mutex error_mutex;
          std::vector<std::thread> pool;
          pool.reserve(static_cast<std::size_t>(threads));
          const int block = (config.replications + threads - 1) / threads;
          for (int t = 0; t < threads; ++t) {
            const int first = t * block;
            const int last = std::min(config.replications, first + block);
            if (first >= last) break;
            pool.emplace_back(run_block, std::cref(config), n, r, rho, first, last,
                              std::ref(results), std::ref(error), std::ref(error_mutex));
          }
          for (auto& worker : pool) worker.join();
          if (error) std::rethrow_exception(error);
        }

        summaries.push_back(summarize_cell(n, r, rho, results));
        if (on_cell) on_cell(summaries.back());
      }
    }
  }
  return summaries;
}

void write_summary_csv_header(std::ostream& out) {
  out << "n,r,rho,s_q25,s_median,s_q75,pe_q25,pe_median,pe_q75\n";
}

void write_summary_csv_row(std::ostream& out, const SimCellSummary& cell, int precision) {
  out << cell.n << ',' << format_double(cell.r, precision) << ','
      << format_double(cell.rho, precision) << ',' << format_double(cell.s_q25, precision) << ','
      << format_double(cell.s_median, precision) << ',' << format_double(cell.s_q75, precision)
      << ',' << format_double(cell.pe_q25, precision) << ','
      << format_double(cell.pe_median, precision) << ',' << format_double(cell.pe_q75, precision)
      << '\n';
}

}  // namespace reva
