#include <benchmark/benchmark.h>

#include "reva/equal_weights.hpp"
#include "reva/model_selection.hpp"
#include "reva/penalty.hpp"
#include "reva/rng.hpp"
#include "reva/simulation.hpp"

namespace {

using namespace reva;

Dataset make_data(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  data.predictors.resize(n, p);
  data.response.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) data.predictors(i, j) = rng.normal();
    data.response(i) = 0.3 * data.predictors.row(i).sum() + rng.normal();
  }
  return data;
}

void BM_FitPenalized(benchmark::State& state) {
  const Dataset data = make_data(state.range(0), state.range(1), 1);
  PenaltySpec spec;
  spec.alpha = 1.0;
  spec.lambda = 0.3 * lambda_max(data, spec);
  for (auto _ : state) {
    const PenalizedFit fit = fit_penalized(data, spec);
    benchmark::DoNotOptimize(fit.coefficients.data());
  }
}
BENCHMARK(BM_FitPenalized)->Args({100, 10})->Args({400, 10})->Args({400, 40});

void BM_FitPath(benchmark::State& state) {
  const Dataset data = make_data(state.range(0), state.range(1), 2);
  PenaltySpec spec;
  spec.alpha = 1.0;
  const LambdaGrid grid = make_default_grid(lambda_max(data, spec));
  for (auto _ : state) {
    const CoefficientPath path = fit_path(data, spec, grid);
    benchmark::DoNotOptimize(path.coefficients.data());
  }
}
BENCHMARK(BM_FitPath)->Args({100, 10})->Args({400, 10});

void BM_EqualWeightsPath(benchmark::State& state) {
  const Dataset data = make_data(state.range(0), 9, 3);
  const Dataset augmented = augmented_dataset(data);
  PenaltySpec spec;
  spec.alpha = 1.0;
  spec.standardize = false;
  spec.penalty_factors = Eigen::VectorXd::Ones(augmented.p());
  spec.penalty_factors(0) = 0.0;
  const LambdaGrid grid = make_default_grid(lambda_max(augmented, spec));
  for (auto _ : state) {
    const CoefficientPath path = fit_equal_shrinkage(data, 1.0, grid);
    benchmark::DoNotOptimize(path.coefficients.data());
  }
}
BENCHMARK(BM_EqualWeightsPath)->Arg(120)->Arg(400);

void BM_CrossValidateShrinkage(benchmark::State& state) {
  const Dataset data = make_data(state.range(0), 1, 4);
  const FoldAssignment folds = kfold_split(data.n(), 10, 7);
  const auto s_grid = default_s_grid();
  for (auto _ : state) {
    const CvCurve curve = cross_validate_shrinkage(data, s_grid, folds);
    benchmark::DoNotOptimize(curve.mean_error.data());
  }
}
BENCHMARK(BM_CrossValidateShrinkage)->Arg(100)->Arg(200);

void BM_RunReplication(benchmark::State& state) {
  const auto s_grid = default_s_grid();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    const ReplicationResult result =
        run_replication(state.range(0), 0.3, 0.8, 10, s_grid, 1000, rng);
    benchmark::DoNotOptimize(result.prediction_error);
  }
}
BENCHMARK(BM_RunReplication)->Arg(25)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
