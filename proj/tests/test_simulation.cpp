#include <doctest.h>

#include <cmath>

#include "reva/errors.hpp"
#include "reva/simulation.hpp"
#include "support.hpp"

using namespace reva;

TEST_SUITE_BEGIN("simulation");

TEST_CASE("error variance from reliability") {
  CHECK(error_variance_from_reliability(1.0) == doctest::Approx(0.0));
  CHECK(error_variance_from_reliability(0.5) == doctest::Approx(1.0));
  CHECK(error_variance_from_reliability(0.8) == doctest::Approx(0.25));
  CHECK_THROWS_AS(error_variance_from_reliability(0.0), InvalidInput);
  CHECK_THROWS_AS(error_variance_from_reliability(1.2), InvalidInput);
}

TEST_CASE("perfect reliability reproduces the true scores exactly") {
  Rng rng(80);
  const GeneratedSample sample = generate_sample(100, 0.3, 1.0, rng);
  CHECK((sample.observed_score - sample.true_score).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generator calibration at moderate monte-carlo size") {
  Rng rng(81);
  const int n = 40000;
  const double r = 0.35, rho = 0.7;
  const GeneratedSample sample = generate_sample(n, r, rho, rng);

  const auto correlation = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const Eigen::ArrayXd ac = a.array() - a.mean();
    const Eigen::ArrayXd bc = b.array() - b.mean();
    return (ac * bc).sum() / std::sqrt(ac.square().sum() * bc.square().sum());
  };

  // Population values: cor(X, Y) = r sqrt(rho), var(X) = 1/rho, var(Y) = 1.
  CHECK(correlation(sample.observed_score, sample.criterion) ==
        doctest::Approx(r * std::sqrt(rho)).epsilon(0.15));
  const double var_x =
      (sample.observed_score.array() - sample.observed_score.mean()).square().sum() / (n - 1);
  CHECK(var_x == doctest::Approx(1.0 / rho).epsilon(0.05));
  const double var_y =
      (sample.criterion.array() - sample.criterion.mean()).square().sum() / (n - 1);
  CHECK(var_y == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("replication is deterministic given the generator seed") {
  const auto s_grid = default_s_grid();
  Rng first(12345);
  const ReplicationResult a = run_replication(50, 0.3, 0.8, 10, s_grid, 200, first);
  Rng second(12345);
  const ReplicationResult b = run_replication(50, 0.3, 0.8, 10, s_grid, 200, second);
  CHECK(a.s_opt == b.s_opt);
  CHECK(a.prediction_error == b.prediction_error);
}

TEST_CASE("weak-signal replications shrink hard and predict near var(Y)") {
  const auto s_grid = default_s_grid();
  std::vector<double> s_values, pe_values;
  for (int repeat = 0; repeat < 40; ++repeat) {
    Rng rng(4400 + repeat);
    // r barely above zero stands in for a shuffled response.
    const ReplicationResult result = run_replication(30, 0.02, 1.0, 10, s_grid, 500, rng);
    s_values.push_back(result.s_opt);
    pe_values.push_back(result.prediction_error);
  }
  std::sort(s_values.begin(), s_values.end());
  std::sort(pe_values.begin(), pe_values.end());
  CHECK(s_values[s_values.size() / 2] <= 0.3);
  CHECK(pe_values[pe_values.size() / 2] == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("run_experiment covers the grid with ordered quantiles, deterministically") {
  SimConfig config;
  config.n_grid = {25, 50};
  config.r_grid = {0.25, 0.4};
  config.rho_grid = {1.0, 0.6};
  config.replications = 12;
  config.validation_n = 150;
  config.master_seed = 31;

  int cells_seen = 0;
  const auto summaries =
      run_experiment(config, [&](const SimCellSummary&) { ++cells_seen; });
  CHECK(summaries.size() == 8);
  CHECK(cells_seen == 8);
  for (const auto& cell : summaries) {
    CHECK(cell.replications_used == 12);
    CHECK(cell.s_q25 <= cell.s_median);
    CHECK(cell.s_median <= cell.s_q75);
    CHECK(cell.pe_q25 <= cell.pe_median);
    CHECK(cell.pe_median <= cell.pe_q75);
    CHECK(cell.s_q25 >= 0.0);
    CHECK(cell.s_q75 <= 1.0);
    CHECK(cell.pe_q25 > 0.0);
  }

  SimConfig threaded = config;
  threaded.threads = 4;
  const auto parallel = run_experiment(threaded);
  REQUIRE(parallel.size() == summaries.size());
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    CHECK(parallel[i].s_median == summaries[i].s_median);
    CHECK(parallel[i].pe_median == summaries[i].pe_median);
    CHECK(parallel[i].pe_q75 == summaries[i].pe_q75);
  }
}

TEST_CASE("replication seeds differ across cells and indices") {
  const std::uint64_t a = replication_seed(1, 25, 0.2, 1.0, 0);
  const std::uint64_t b = replication_seed(1, 25, 0.2, 1.0, 1);
  const std::uint64_t c = replication_seed(1, 50, 0.2, 1.0, 0);
  const std::uint64_t d = replication_seed(2, 25, 0.2, 1.0, 0);
  CHECK(a != b);
  CHECK(a != c);
  CHECK(a != d);
}

TEST_CASE("config validation") {
  SimConfig config;
  config.n_grid = {8};
  config.folds = 10;
  CHECK_THROWS_AS(validate(config), InvalidInput);  // folds exceed smallest n

  config = SimConfig{};
  config.r_grid = {1.0};
  CHECK_THROWS_AS(validate(config), InvalidInput);

  config = SimConfig{};
  config.replications = 0;
  CHECK_THROWS_AS(validate(config), InvalidInput);
}

TEST_SUITE_END();
