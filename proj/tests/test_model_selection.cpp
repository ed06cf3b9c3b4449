#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "reva/equal_weights.hpp"
#include "reva/errors.hpp"
#include "reva/model_selection.hpp"
#include "reva/shrinkage.hpp"
#include "support.hpp"

using namespace reva;

TEST_SUITE_BEGIN("model_selection");

TEST_CASE("kfold_split: leave-one-out and balanced sizes") {
  const FoldAssignment loo = kfold_split(10, 10, 3);
  std::set<int> seen(loo.fold_of.begin(), loo.fold_of.end());
  CHECK(seen.size() == 10);  // each fold exactly one row

  const FoldAssignment threes = kfold_split(10, 3, 3);
  std::vector<int> sizes(3, 0);
  for (int fold : threes.fold_of) ++sizes[static_cast<std::size_t>(fold)];
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{3, 3, 4});
}

TEST_CASE("kfold_split is deterministic in the seed") {
  const FoldAssignment a = kfold_split(57, 10, 11);
  const FoldAssignment b = kfold_split(57, 10, 11);
  const FoldAssignment c = kfold_split(57, 10, 12);
  CHECK(a.fold_of == b.fold_of);
  CHECK(a.fold_of != c.fold_of);
}

TEST_CASE("kfold_split validates its arguments") {
  CHECK_THROWS_AS(kfold_split(10, 1, 0), InvalidInput);
  CHECK_THROWS_AS(kfold_split(10, 11, 0), InvalidInput);
}

TEST_CASE("select_1se: hand-built curve picks the most regularized point under threshold") {
  CvCurve curve;
  curve.grid = {5, 4, 3, 2, 1};  // most regularized first
  curve.mean_error = {5, 4, 3, 4, 5};
  curve.std_error = {1, 1, 1.2, 1, 1};
  CHECK(select_1se(curve) == 1);  // error 4 <= 3 + 1.2
}

TEST_CASE("select_1se: flat curve returns the most regularized endpoint") {
  CvCurve curve;
  curve.grid = {3, 2, 1};
  curve.mean_error = {2, 2, 2};
  curve.std_error = {0.5, 0.5, 0.5};
  CHECK(select_1se(curve) == 0);
}

TEST_CASE("select_1se: zero standard error keeps the minimum unless ties allow more") {
  CvCurve curve;
  curve.grid = {3, 2, 1};
  curve.mean_error = {5, 4, 6};
  curve.std_error = {0, 0, 0};
  CHECK(select_1se(curve) == 1);

  curve.mean_error = {4, 4, 6};
  CHECK(select_1se(curve) == 0);  // equal-error more-regularized point exists
}

TEST_CASE("cross_validate_path: pure noise concentrates on the regularized end") {
  int regularized_end = 0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(9000 + seed);
    Dataset data;
    data.predictors.resize(40, 5);
    data.response.resize(40);
    for (Eigen::Index i = 0; i < 40; ++i) {
      for (Eigen::Index j = 0; j < 5; ++j) data.predictors(i, j) = rng.normal();
      data.response(i) = rng.normal();  // independent of the predictors
    }
    PenaltySpec spec;
    const LambdaGrid grid = make_default_grid(lambda_max(data, spec), 30);
    const FoldAssignment folds = kfold_split(40, 5, 77 + static_cast<std::uint64_t>(seed));
    const CvCurve curve =
        cross_validate_path(data, ModelKind::standard_lasso, 1.0, grid, folds);
    if (curve.chosen_min < grid.size() / 3) ++regularized_end;
  }
  CHECK(regularized_end >= 90);
}

TEST_CASE("cross_validate_path: strong signal concentrates on the unregularized end") {
  int loose_end = 0;
  const int seeds = 40;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(500 + seed);
    const auto instance = testsupport::random_instance(rng, 120, 3, 0.2);
    PenaltySpec spec;
    const LambdaGrid grid = make_default_grid(lambda_max(instance.data, spec), 30);
    const FoldAssignment folds = kfold_split(120, 10, static_cast<std::uint64_t>(seed));
    const CvCurve curve =
        cross_validate_path(instance.data, ModelKind::standard_lasso, 1.0, grid, folds);
    if (curve.chosen_min >= 2 * grid.size() / 3) ++loose_end;
  }
  CHECK(loose_end >= 35);
}

TEST_CASE("cross_validate_path supports K = 2") {
  Rng rng(60);
  const auto instance = testsupport::random_instance(rng, 30, 3);
  PenaltySpec spec;
  const LambdaGrid grid = make_default_grid(lambda_max(instance.data, spec), 20);
  const FoldAssignment folds = kfold_split(30, 2, 5);
  const CvCurve curve =
      cross_validate_path(instance.data, ModelKind::standard_lasso, 1.0, grid, folds);
  CHECK(curve.mean_error.size() == 20);
  CHECK(curve.chosen_1se <= curve.chosen_min);
}

TEST_CASE("property: the 1se choice is never less regularized than the minimum") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto instance = testsupport::random_instance(rng, 50, 4, 1.5);
    PenaltySpec spec;
    const LambdaGrid grid = make_default_grid(lambda_max(instance.data, spec), 25);
    const FoldAssignment folds = kfold_split(50, 5, static_cast<std::uint64_t>(trial));
    for (ModelKind kind : {ModelKind::standard_lasso, ModelKind::equal_weights}) {
      const CvCurve curve = cross_validate_path(instance.data, kind, 1.0, grid, folds);
      CHECK(curve.chosen_1se <= curve.chosen_min);
    }
  }
}

TEST_CASE("property: CV error is invariant to fold relabeling") {
  Rng rng(62);
  const auto instance = testsupport::random_instance(rng, 36, 3);
  PenaltySpec spec;
  const LambdaGrid grid = make_default_grid(lambda_max(instance.data, spec), 15);
  const FoldAssignment folds = kfold_split(36, 4, 9);

  FoldAssignment relabeled = folds;
  for (int& fold : relabeled.fold_of) fold = (fold + 2) % 4;  // cyclic relabel

  const CvCurve original =
      cross_validate_path(instance.data, ModelKind::standard_lasso, 1.0, grid, folds);
  const CvCurve permuted =
      cross_validate_path(instance.data, ModelKind::standard_lasso, 1.0, grid, relabeled);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(original.mean_error[i] == doctest::Approx(permuted.mean_error[i]).epsilon(1e-12));
    CHECK(original.std_error[i] == doctest::Approx(permuted.std_error[i]).epsilon(1e-12));
  }
}

TEST_CASE("cross_validate_shrinkage: noiseless linear data selects s = 1") {
  Dataset data;
  data.predictors.resize(20, 1);
  data.response.resize(20);
  for (Eigen::Index i = 0; i < 20; ++i) {
    data.predictors(i, 0) = static_cast<double>(i);
    data.response(i) = 2.0 + 3.0 * static_cast<double>(i);
  }
  const FoldAssignment folds = kfold_split(20, 10, 4);
  const auto s_grid = default_s_grid();
  const CvCurve curve = cross_validate_shrinkage(data, s_grid, folds);
  CHECK(curve.grid[curve.chosen_min] == doctest::Approx(1.0));
}

TEST_CASE("cross_validate_shrinkage: unrelated response drives s toward zero") {
  std::vector<double> chosen;
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(7000 + seed);
    Dataset data;
    data.predictors.resize(20, 1);
    data.response.resize(20);
    for (Eigen::Index i = 0; i < 20; ++i) {
      data.predictors(i, 0) = rng.normal();
      data.response(i) = rng.normal();
    }
    const FoldAssignment folds = kfold_split(20, 10, static_cast<std::uint64_t>(seed));
    const CvCurve curve = cross_validate_shrinkage(data, default_s_grid(), folds);
    chosen.push_back(curve.grid[curve.chosen_min]);
  }
  std::sort(chosen.begin(), chosen.end());
  CHECK(chosen[chosen.size() / 2] <= 0.25);  // median choice is heavy shrinkage
}

TEST_CASE("cross_validate_shrinkage matches the population formula at large n") {
  Rng rng(63);
  std::vector<double> chosen;
  for (int repeat = 0; repeat < 15; ++repeat) {
    Dataset data;
    const Eigen::Index n = 200;
    data.predictors.resize(n, 1);
    data.response.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = rng.normal();
      data.predictors(i, 0) = t;  // rho = 1: observed equals true score
      data.response(i) = 0.4 * t + std::sqrt(1.0 - 0.16) * rng.normal();
    }
    const FoldAssignment folds = kfold_split(n, 10, static_cast<std::uint64_t>(repeat));
    const CvCurve curve = cross_validate_shrinkage(data, default_s_grid(), folds);
    chosen.push_back(curve.grid[curve.chosen_min]);
  }
  std::sort(chosen.begin(), chosen.end());
  const double median = chosen[chosen.size() / 2];
  CHECK(median == doctest::Approx(optimal_s_population(0.4, 200).s).epsilon(0.2));
}

TEST_CASE("cross_validate_shrinkage validates the grid and shape") {
  Rng rng(64);
  const auto wide = testsupport::random_instance(rng, 20, 2);
  const FoldAssignment folds = kfold_split(20, 4, 0);
  CHECK_THROWS_AS(cross_validate_shrinkage(wide.data, default_s_grid(), folds), InvalidInput);

  const auto narrow = testsupport::random_instance(rng, 20, 1);
  const std::vector<double> decreasing = {0.5, 0.2};
  CHECK_THROWS_AS(cross_validate_shrinkage(narrow.data, decreasing, folds), InvalidInput);
  const std::vector<double> outside = {0.5, 1.2};
  CHECK_THROWS_AS(cross_validate_shrinkage(narrow.data, outside, folds), InvalidInput);
}

TEST_CASE("default s grid spans [0, 1] in steps of 0.01") {
  const auto grid = default_s_grid();
  CHECK(grid.size() == 101);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[50] == doctest::Approx(0.5));
}

TEST_CASE("shrinkage curve serializes with its own grid name") {
  Rng rng(66);
  const auto instance = testsupport::random_instance(rng, 24, 1);
  const FoldAssignment folds = kfold_split(24, 4, 1);
  const CvCurve curve = cross_validate_shrinkage(instance.data, default_s_grid(), folds);

  std::ostringstream out;
  write_curve_csv(out, curve, "s");
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "s,mean_error,std_error,is_min,is_1se");
  int rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 101);
}

TEST_CASE("leave-one-out shrinkage CV degrades gracefully") {
  Rng rng(65);
  const auto instance = testsupport::random_instance(rng, 12, 1);
  const FoldAssignment folds = kfold_split(12, 12, 2);
  const CvCurve curve = cross_validate_shrinkage(instance.data, default_s_grid(), folds);
  CHECK(curve.mean_error.size() == curve.grid.size());
  for (double se : curve.std_error) CHECK(se >= 0.0);
}

TEST_SUITE_END();
