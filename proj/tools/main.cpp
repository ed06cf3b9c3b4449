// reva command-line tool: penalized fits, cross-validation, the reliability
// simulation, and weighting-scheme comparisons, all emitting seeded,
// reproducible CSV artifacts.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "reva/csv.hpp"
#include "reva/equal_weights.hpp"
#include "reva/errors.hpp"
#include "reva/linear_model.hpp"
#include "reva/model_selection.hpp"
#include "reva/penalty.hpp"
#include "reva/rng.hpp"
#include "reva/simulation.hpp"
#include "reva/version.hpp"
#include "reva/weighting.hpp"

namespace {

using namespace reva;

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Provenance {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;

  void add(const std::string& key, const std::string& value) { config.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
};

void write_provenance(std::ostream& out, const Provenance& provenance) {
  out << "# reva " << kVersion << "\n";
  out << "# command: " << provenance.command << "\n";
  out << "# config:";
  for (const auto& [key, value] : provenance.config) out << ' ' << key << '=' << value;
  out << "\n";
  out << "# seed: " << provenance.seed << "\n";
}

// File sink when a path is given, standard output otherwise.
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw OutputError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void finish() {
    stream().flush();
    if (!stream()) throw OutputError("write failed on '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

std::string base_name(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

bool resolve_standardize(const std::string& flag, bool model_default) {
  if (flag.empty()) return model_default;
  return flag == "on";
}

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string input;
  std::string response = "y";
  std::string model = "ols";
  double alpha = 1.0;
  double lambda = -1.0;  // negative = not given
  std::string standardize;
  std::uint64_t seed = 0;
  std::string out;
  int precision = 6;
};

std::vector<std::pair<std::string, double>> fit_rows(const Dataset& data,
                                                     const FitOptions& options) {
  const std::vector<std::string> names = effective_names(data);
  std::vector<std::pair<std::string, double>> rows;

  if (options.model == "ols") {
    const LinearFit fit = fit_ols(data);
    rows.emplace_back("intercept", fit.intercept);
    for (Eigen::Index j = 0; j < fit.coefficients.size(); ++j)
      rows.emplace_back(names[static_cast<std::size_t>(j)], fit.coefficients(j));
    return rows;
  }

  if (options.lambda < 0.0)
    throw InvalidInput("--lambda is required for --model " + options.model);

  if (options.model == "lasso") {
    LinearFit fit;
    if (options.lambda == 0.0) {
      fit = fit_ols(data);
    } else {
      PenaltySpec spec;
      spec.alpha = options.alpha;
      spec.lambda = options.lambda;
      spec.standardize = resolve_standardize(options.standardize, true);
      const PenalizedFit penalized = fit_penalized(data, spec);
      fit = {penalized.intercept, penalized.coefficients};
    }
    rows.emplace_back("intercept", fit.intercept);
    for (Eigen::Index j = 0; j < fit.coefficients.size(); ++j)
      rows.emplace_back(names[static_cast<std::size_t>(j)], fit.coefficients(j));
    return rows;
  }

  if (options.model == "equal") {
    EqualWeightsFit fit;
    if (options.lambda == 0.0) {
      fit = fit_equal_ols(data);
    } else {
      const Dataset augmented = augmented_dataset(data);
      PenaltySpec spec;
      spec.alpha = options.alpha;
      spec.lambda = options.lambda;
      spec.standardize = resolve_standardize(options.standardize, false);
      spec.penalty_factors = Eigen::VectorXd::Ones(augmented.p());
      spec.penalty_factors(0) = 0.0;
      const PenalizedFit penalized = fit_penalized(augmented, spec);
      fit.intercept = penalized.intercept;
      fit.xi = penalized.coefficients(0);
      fit.gammas = penalized.coefficients.tail(penalized.coefficients.size() - 1);
    }
    const LinearFit implied = implied_coefficients(fit);
    rows.emplace_back("intercept", fit.intercept);
    rows.emplace_back("sum", fit.xi);
    for (Eigen::Index j = 0; j < implied.coefficients.size(); ++j)
      rows.emplace_back(names[static_cast<std::size_t>(j)], implied.coefficients(j));
    return rows;
  }

  throw InvalidInput("unknown model '" + options.model + "'");
}

int run_fit(const FitOptions& options) {
  const Dataset data = read_dataset_csv_file(options.input, options.response);
  const auto rows = fit_rows(data, options);

  Provenance provenance;
  provenance.command = "fit";
  provenance.add("input", base_name(options.input));
  provenance.add("response", options.response);
  provenance.add("model", options.model);
  provenance.add("alpha", options.alpha);
  if (options.lambda >= 0.0) provenance.add("lambda", options.lambda);
  if (options.model != "ols")
    provenance.add("standardize",
                   resolve_standardize(options.standardize, options.model == "lasso")
                       ? std::string("on")
                       : std::string("off"));
  provenance.seed = options.seed;

  Output output(options.out);
  write_provenance(output.stream(), provenance);
  output.stream() << "term,estimate\n";
  for (const auto& [term, estimate] : rows)
    output.stream() << term << ',' << format_double(estimate, options.precision) << '\n';
  output.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// cv

struct CvOptions {
  std::string input;
  std::string response = "y";
  std::string model = "lasso";
  double alpha = 1.0;
  int folds = 10;
  std::uint64_t seed = 1;
  std::size_t grid_size = 100;
  double grid_ratio = 1e-3;
  std::string out_curve;
  std::string out_coefs;
  std::string out_path;
  int precision = 6;
};

int run_cv(const CvOptions& options) {
  const Dataset data = read_dataset_csv_file(options.input, options.response);
  const std::vector<std::string> names = effective_names(data);
  const FoldAssignment folds = kfold_split(data.n(), options.folds, options.seed);

  CvCurve curve;
  CoefficientPath path;
  std::vector<std::string> path_names = names;
  std::vector<std::pair<std::string, std::pair<double, double>>> coef_rows;

  if (options.model == "lasso") {
    PenaltySpec spec;
    spec.alpha = options.alpha;
    const LambdaGrid grid =
        make_default_grid(lambda_max(data, spec), options.grid_size, options.grid_ratio);
    curve = cross_validate_path(data, ModelKind::standard_lasso, options.alpha, grid, folds);
    path = fit_path(data, spec, grid);

    const auto min_row = static_cast<Eigen::Index>(curve.chosen_min);
    const auto se_row = static_cast<Eigen::Index>(curve.chosen_1se);
    coef_rows.emplace_back("intercept",
                           std::pair{path.intercepts(min_row), path.intercepts(se_row)});
    for (Eigen::Index j = 0; j < data.p(); ++j)
      coef_rows.emplace_back(names[static_cast<std::size_t>(j)],
                             std::pair{path.coefficients(min_row, j), path.coefficients(se_row, j)});
  } else if (options.model == "equal") {
    const Dataset augmented = augmented_dataset(data);
    PenaltySpec spec;
    spec.alpha = options.alpha;
    spec.standardize = false;
    spec.penalty_factors = Eigen::VectorXd::Ones(augmented.p());
    spec.penalty_factors(0) = 0.0;
    const LambdaGrid grid =
        make_default_grid(lambda_max(augmented, spec), options.grid_size, options.grid_ratio);
    curve = cross_validate_path(data, ModelKind::equal_weights, options.alpha, grid, folds);
    path = fit_path(augmented, spec, grid);
    path_names = augmented.column_names;  // sum, then the deviation scores

    const EqualWeightsFit fit_min = equal_fit_at(path, curve.chosen_min);
    const EqualWeightsFit fit_1se = equal_fit_at(path, curve.chosen_1se);
    const LinearFit implied_min = implied_coefficients(fit_min);
    const LinearFit implied_1se = implied_coefficients(fit_1se);
    coef_rows.emplace_back("intercept", std::pair{fit_min.intercept, fit_1se.intercept});
    coef_rows.emplace_back("sum", std::pair{fit_min.xi, fit_1se.xi});
    for (Eigen::Index j = 0; j < data.p(); ++j)
      coef_rows.emplace_back(names[static_cast<std::size_t>(j)],
                             std::pair{implied_min.coefficients(j), implied_1se.coefficients(j)});
  } else {
    throw InvalidInput("unknown model '" + options.model + "' (cv supports lasso, equal)");
  }

  Provenance provenance;
  provenance.command = "cv";
  provenance.add("input", base_name(options.input));
  provenance.add("response", options.response);
  provenance.add("model", options.model);
  provenance.add("alpha", options.alpha);
  provenance.add("folds", options.folds);
  provenance.add("grid_size", static_cast<int>(options.grid_size));
  provenance.add("grid_ratio", options.grid_ratio);
  provenance.seed = options.seed;

  {
    Output output(options.out_curve);
    write_provenance(output.stream(), provenance);
    write_curve_csv(output.stream(), curve, "lambda", options.precision);
    output.finish();
  }
  {
    Output output(options.out_coefs);
    write_provenance(output.stream(), provenance);
    output.stream() << "term,min,1se\n";
    for (const auto& [term, values] : coef_rows)
      output.stream() << term << ',' << format_double(values.first, options.precision) << ','
                      << format_double(values.second, options.precision) << '\n';
    output.finish();
  }
  if (!options.out_path.empty()) {
    Output output(options.out_path);
    write_provenance(output.stream(), provenance);
    write_path_csv(output.stream(), path, path_names, options.precision);
    output.finish();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string config_path;
  std::vector<int> n_grid = {25, 50, 100, 200};
  std::vector<double> r_grid = {0.20, 0.25, 0.30, 0.35, 0.40};
  std::vector<double> rho_grid = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5};
  int reps = 1000;
  int validation_n = 1000;
  int folds = 10;
  std::uint64_t master_seed = 1;
  int threads = 1;
  bool resume = false;
  std::string out_dir;
  int precision = 6;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw InvalidInput("config: cannot parse '" + text + "' for key '" + key + "'");
  return value;
}

// Flat key=value file mirroring the simulate flags. Values given on the
// command line win over the file.
void apply_config_file(SimulateOptions& options, const CLI::App& cmd) {
  std::ifstream in(options.config_path);
  if (!in) throw InvalidInput("cannot open config file '" + options.config_path + "'");

  const auto untouched = [&](const std::string& flag) { return cmd.count(flag) == 0; };

  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::size_t equals = line.find('=');
    if (equals == std::string::npos)
      throw InvalidInput("config: expected key=value at line " + std::to_string(line_number));
    const std::string key = line.substr(0, equals);
    const std::string value = line.substr(equals + 1);

    if (key == "n-grid") {
      if (!untouched("--n-grid")) continue;
      options.n_grid.clear();
      for (const auto& part : split_list(value))
        options.n_grid.push_back(parse_number<int>(part, key));
    } else if (key == "r-grid") {
      if (!untouched("--r-grid")) continue;
      options.r_grid.clear();
      for (const auto& part : split_list(value))
        options.r_grid.push_back(parse_number<double>(part, key));
    } else if (key == "rho-grid") {
      if (!untouched("--rho-grid")) continue;
      options.rho_grid.clear();
      for (const auto& part : split_list(value))
        options.rho_grid.push_back(parse_number<double>(part, key));
    } else if (key == "reps") {
      if (untouched("--reps")) options.reps = parse_number<int>(value, key);
    } else if (key == "validation-n") {
      if (untouched("--validation-n")) options.validation_n = parse_number<int>(value, key);
    } else if (key == "folds") {
      if (untouched("--folds")) options.folds = parse_number<int>(value, key);
    } else if (key == "master-seed") {
      if (untouched("--master-seed"))
        options.master_seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "threads") {
      if (untouched("--threads")) options.threads = parse_number<int>(value, key);
    } else {
      throw InvalidInput("config: unknown key '" + key + "' at line " +
                         std::to_string(line_number));
    }
  }
}

std::string join_ints(const std::vector<int>& values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) joined += ',';
    joined += std::to_string(values[i]);
  }
  return joined;
}

std::string join_doubles(const std::vector<double>& values, int precision = 6) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) joined += ',';
    joined += format_double(values[i], precision);
  }
  return joined;
}

Provenance simulate_provenance(const SimulateOptions& options) {
  // --threads is an execution detail: output bytes must not depend on it.
  Provenance provenance;
  provenance.command = "simulate";
  provenance.add("n-grid", join_ints(options.n_grid));
  provenance.add("r-grid", join_doubles(options.r_grid));
  provenance.add("rho-grid", join_doubles(options.rho_grid));
  provenance.add("reps", options.reps);
  provenance.add("validation-n", options.validation_n);
  provenance.add("folds", options.folds);
  provenance.seed = options.master_seed;
  return provenance;
}

std::set<std::tuple<int, std::string, std::string>> completed_cells(const std::string& path) {
  std::set<std::tuple<int, std::string, std::string>> cells;
  std::ifstream in(path);
  if (!in) return cells;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
    std::istringstream row(line);
    std::string n_text, r_text, rho_text;
    if (!std::getline(row, n_text, ',') || !std::getline(row, r_text, ',') ||
        !std::getline(row, rho_text, ','))
      continue;
    int n = 0;
    const auto parsed = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
    if (parsed.ec != std::errc{} || parsed.ptr != n_text.data() + n_text.size()) continue;
    cells.emplace(n, r_text, rho_text);
  }
  return cells;
}

int run_simulate(SimulateOptions options, const CLI::App& cmd) {
  if (!options.config_path.empty()) apply_config_file(options, cmd);

  SimConfig config;
  config.n_grid = options.n_grid;
  config.r_grid = options.r_grid;
  config.rho_grid = options.rho_grid;
  config.replications = options.reps;
  config.validation_n = options.validation_n;
  config.folds = options.folds;
  config.master_seed = options.master_seed;
  config.threads = options.threads;
  validate(config);

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + options.out_dir + "'");

  const Provenance provenance = simulate_provenance(options);
  const std::string summary_path = options.out_dir + "/summary.csv";
  const std::string config_path = options.out_dir + "/config.txt";

  {
    std::ofstream sidecar(config_path, std::ios::binary);
    if (!sidecar) throw OutputError("cannot open '" + config_path + "' for writing");
    write_provenance(sidecar, provenance);
    sidecar << "n-grid=" << join_ints(options.n_grid) << '\n'
            << "r-grid=" << join_doubles(options.r_grid) << '\n'
            << "rho-grid=" << join_doubles(options.rho_grid) << '\n'
            << "reps=" << options.reps << '\n'
            << "validation-n=" << options.validation_n << '\n'
            << "folds=" << options.folds << '\n'
            << "master-seed=" << options.master_seed << '\n';
    if (!sidecar) throw OutputError("write failed on '" + config_path + "'");
  }

  const bool resuming = options.resume && std::filesystem::exists(summary_path);
  const auto done = resuming ? completed_cells(summary_path)
                             : std::set<std::tuple<int, std::string, std::string>>{};

  std::ofstream summary;
  summary.open(summary_path, resuming ? std::ios::binary | std::ios::app : std::ios::binary);
  if (!summary) throw OutputError("cannot open '" + summary_path + "' for writing");
  if (!resuming) {
    write_provenance(summary, provenance);
    write_summary_csv_header(summary);
    summary.flush();
  }

  // Cell seeds depend only on (master_seed, n, r, rho, rep), so per-cell runs
  // reproduce exactly what a full run would have written.
  for (int n : config.n_grid) {
    for (double r : config.r_grid) {
      for (double rho : config.rho_grid) {
        if (resuming && done.count({n, format_double(r, options.precision),
                                    format_double(rho, options.precision)}))
          continue;
        SimConfig cell_config = config;
        cell_config.n_grid = {n};
        cell_config.r_grid = {r};
        cell_config.rho_grid = {rho};
        const auto cells = run_experiment(cell_config);
        write_summary_csv_row(summary, cells.front(), options.precision);
        summary.flush();
        if (!summary) throw OutputError("write failed on '" + summary_path + "'");
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// compare-weights

struct CompareWeightsOptions {
  std::string input;
  std::string response = "y";
  double train_frac = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  int precision = 6;
};

int run_compare_weights(const CompareWeightsOptions& options) {
  const Dataset data = read_dataset_csv_file(options.input, options.response);
  if (!(options.train_frac > 0.0 && options.train_frac < 1.0))
    throw InvalidInput("--train-frac must lie in (0, 1)");

  const auto n = data.n();
  const auto n_train = static_cast<Eigen::Index>(
      std::llround(options.train_frac * static_cast<double>(n)));
  if (n_train < 2 || n - n_train < 2)
    throw InvalidInput("train fraction leaves fewer than 2 rows on one side");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(options.seed);
  for (std::size_t i = order.size() - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(i + 1)]);

  Dataset train, test;
  train.predictors.resize(n_train, data.p());
  train.response.resize(n_train);
  test.predictors.resize(n - n_train, data.p());
  test.response.resize(n - n_train);
  train.column_names = data.column_names;
  test.column_names = data.column_names;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index source = order[static_cast<std::size_t>(i)];
    if (i < n_train) {
      train.predictors.row(i) = data.predictors.row(source);
      train.response(i) = data.response(source);
    } else {
      test.predictors.row(i - n_train) = data.predictors.row(source);
      test.response(i - n_train) = data.response(source);
    }
  }

  const auto evaluations = evaluate_schemes(train, test);

  Provenance provenance;
  provenance.command = "compare-weights";
  provenance.add("input", base_name(options.input));
  provenance.add("response", options.response);
  provenance.add("train-frac", options.train_frac);
  provenance.seed = options.seed;

  Output output(options.out);
  write_provenance(output.stream(), provenance);
  write_schemes_csv(output.stream(), evaluations, options.precision);
  output.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// compare (standard lasso vs equal-weights reparametrization)

struct CompareOptions {
  std::string input;
  std::string response = "y";
  double alpha = 1.0;
  int folds = 10;
  std::uint64_t seed = 1;
  std::string out_prefix;
  int precision = 6;
};

int run_compare(const CompareOptions& options) {
  const Dataset data = read_dataset_csv_file(options.input, options.response);
  const ModelComparison comparison = compare_models(data, options.alpha, options.folds,
                                                    options.seed);

  Provenance provenance;
  provenance.command = "compare";
  provenance.add("input", base_name(options.input));
  provenance.add("response", options.response);
  provenance.add("alpha", options.alpha);
  provenance.add("folds", options.folds);
  provenance.seed = options.seed;

  {
    Output output(options.out_prefix + "_table.csv");
    write_provenance(output.stream(), provenance);
    write_comparison_table_csv(output.stream(), comparison, effective_names(data),
                               options.precision);
    output.finish();
  }
  {
    Output output(options.out_prefix + "_curve_zero.csv");
    write_provenance(output.stream(), provenance);
    write_comparison_curve_csv(output.stream(), comparison.standard_curve,
                               comparison.standard_path, false, options.precision);
    output.finish();
  }
  {
    Output output(options.out_prefix + "_curve_equal.csv");
    write_provenance(output.stream(), provenance);
    write_comparison_curve_csv(output.stream(), comparison.equal_curve, comparison.equal_path,
                               true, options.precision);
    output.finish();
  }

  std::cout << "min CV MSE standard lasso: "
            << format_double(comparison.standard_min_mse, options.precision) << '\n'
            << "min CV MSE equal-weights:  "
            << format_double(comparison.equal_min_mse, options.precision) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reva: reduced-variance regression toolkit"};
  app.require_subcommand(1);

  FitOptions fit_options;
  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "Fit one model and emit a coefficient CSV (original scale)");
  fit_cmd->add_option("input", fit_options.input, "dataset CSV")->required();
  fit_cmd->add_option("--response", fit_options.response, "response column name");
  fit_cmd->add_option("--model", fit_options.model, "ols | lasso | equal")
      ->check(CLI::IsMember({"ols", "lasso", "equal"}));
  fit_cmd->add_option("--alpha", fit_options.alpha, "elastic-net mixing (1 = lasso)")
      ->check(CLI::Range(0.0, 1.0));
  fit_cmd->add_option("--lambda", fit_options.lambda,
                      "penalty strength (0 = unpenalized); the objective is "
                      "(1/2n)*RSS + lambda*sum_j w_j*(alpha*|b_j| + (1-alpha)/2*b_j^2)")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--standardize", fit_options.standardize, "on | off")
      ->check(CLI::IsMember({"on", "off"}));
  fit_cmd->add_option("--seed", fit_options.seed, "recorded in output headers");
  fit_cmd->add_option("--out", fit_options.out, "output file (default: stdout)");
  fit_cmd->add_option("--precision", fit_options.precision, "significant digits")
      ->check(CLI::Range(1, 17));

  CvOptions cv_options;
  CLI::App* cv_cmd = app.add_subcommand(
      "cv", "Cross-validate a lambda path; emit the CV curve and selected coefficients");
  cv_cmd->add_option("input", cv_options.input, "dataset CSV")->required();
  cv_cmd->add_option("--response", cv_options.response, "response column name");
  cv_cmd->add_option("--model", cv_options.model, "lasso | equal")
      ->check(CLI::IsMember({"lasso", "equal"}));
  cv_cmd->add_option("--alpha", cv_options.alpha, "elastic-net mixing")->check(CLI::Range(0.0, 1.0));
  cv_cmd->add_option("--folds", cv_options.folds, "number of folds");
  cv_cmd->add_option("--seed", cv_options.seed, "fold assignment seed");
  cv_cmd->add_option("--grid-size", cv_options.grid_size,
                     "lambda grid size; lambdas live on the (1/2n)-scaled objective");
  cv_cmd->add_option("--grid-ratio", cv_options.grid_ratio, "grid floor / lambda_max");
  cv_cmd->add_option("--out-curve", cv_options.out_curve, "CV curve CSV (default: stdout)");
  cv_cmd->add_option("--out-coefs", cv_options.out_coefs, "selected coefficients CSV");
  cv_cmd->add_option("--out-path", cv_options.out_path,
                     "full-data coefficient path CSV (lambda, intercept, coefficients)");
  cv_cmd->add_option("--precision", cv_options.precision, "significant digits")
      ->check(CLI::Range(1, 17));

  SimulateOptions simulate_options;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Reliability/shrinkage experiment; emits per-cell quantile summaries");
  simulate_cmd->add_option("--config", simulate_options.config_path,
                           "flat key=value file mirroring these flags");
  simulate_cmd->add_option("--n-grid", simulate_options.n_grid, "calibration sizes")
      ->delimiter(',');
  simulate_cmd->add_option("--r-grid", simulate_options.r_grid, "effect sizes")->delimiter(',');
  simulate_cmd->add_option("--rho-grid", simulate_options.rho_grid, "reliabilities")
      ->delimiter(',');
  simulate_cmd->add_option("--reps", simulate_options.reps, "replications per cell");
  simulate_cmd->add_option("--validation-n", simulate_options.validation_n,
                           "validation sample size");
  simulate_cmd->add_option("--folds", simulate_options.folds, "CV folds for s");
  simulate_cmd->add_option("--master-seed", simulate_options.master_seed, "master seed");
  simulate_cmd->add_option("--threads", simulate_options.threads, "worker threads");
  simulate_cmd->add_flag("--resume", simulate_options.resume,
                         "skip cells already present in summary.csv");
  simulate_cmd->add_option("--out", simulate_options.out_dir, "output directory")->required();
  simulate_cmd->add_option("--precision", simulate_options.precision, "significant digits")
      ->check(CLI::Range(1, 17));

  CompareWeightsOptions weights_options;
  CLI::App* weights_cmd = app.add_subcommand(
      "compare-weights", "Evaluate the four classical weighting schemes out-of-sample");
  weights_cmd->add_option("input", weights_options.input, "dataset CSV")->required();
  weights_cmd->add_option("--response", weights_options.response, "response column name");
  weights_cmd->add_option("--train-frac", weights_options.train_frac, "training fraction");
  weights_cmd->add_option("--seed", weights_options.seed, "split seed");
  weights_cmd->add_option("--out", weights_options.out, "output file (default: stdout)");
  weights_cmd->add_option("--precision", weights_options.precision, "significant digits")
      ->check(CLI::Range(1, 17));

  CompareOptions compare_options;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Standard lasso vs equal-weights shrinkage on shared folds");
  compare_cmd->add_option("input", compare_options.input, "dataset CSV")->required();
  compare_cmd->add_option("--response", compare_options.response, "response column name");
  compare_cmd->add_option("--alpha", compare_options.alpha, "elastic-net mixing")
      ->check(CLI::Range(0.0, 1.0));
  compare_cmd->add_option("--folds", compare_options.folds, "number of folds");
  compare_cmd->add_option("--seed", compare_options.seed, "fold assignment seed");
  compare_cmd->add_option("--out-prefix", compare_options.out_prefix, "output file prefix")
      ->required();
  compare_cmd->add_option("--precision", compare_options.precision, "significant digits")
      ->check(CLI::Range(1, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (app.got_subcommand(fit_cmd)) return run_fit(fit_options);
    if (app.got_subcommand(cv_cmd)) return run_cv(cv_options);
    if (app.got_subcommand(simulate_cmd)) return run_simulate(simulate_options, *simulate_cmd);
    if (app.got_subcommand(weights_cmd)) return run_compare_weights(weights_options);
    if (app.got_subcommand(compare_cmd)) return run_compare(compare_options);
  } catch (const CsvError& e) {
    std::cerr << "reva: " << e.what() << '\n';
    return 2;
  } catch (const OutputError& e) {
    std::cerr << "reva: " << e.what() << '\n';
    return 4;
  } catch (const InvalidInput& e) {
    std::cerr << "reva: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "reva: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
