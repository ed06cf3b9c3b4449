#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace reva {

/// Predictor matrix (rows = persons, columns = items or test scores) plus a
/// criterion vector. The universal input of the library.
struct Dataset {
  Eigen::MatrixXd predictors;            // n x p
  Eigen::VectorXd response;              // n
  std::vector<std::string> column_names; // p labels, may be empty

  Eigen::Index n() const { return predictors.rows(); }
  Eigen::Index p() const { return predictors.cols(); }
};

/// Throws InvalidInput unless n >= min_rows, p >= 1, all entries finite and
/// dimensions agree. column_names may be empty; if present its size must be p.
void validate(const Dataset& data, Eigen::Index min_rows = 1);

/// Column names, falling back to x1..xp when none were recorded.
std::vector<std::string> effective_names(const Dataset& data);

}  // namespace reva
