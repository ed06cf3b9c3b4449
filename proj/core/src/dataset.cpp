#include "reva/dataset.hpp"

#include "reva/errors.hpp"

namespace reva {

void validate(const Dataset& data, Eigen::Index min_rows) {
  if (data.predictors.rows() < min_rows)
    throw InvalidInput("dataset needs at least " + std::to_string(min_rows) + " rows, got " +
                       std::to_string(data.predictors.rows()));
  if (data.predictors.cols() < 1) throw InvalidInput("dataset needs at least one predictor");
  if (data.response.size() != data.predictors.rows())
    throw InvalidInput("response length does not match predictor rows");
  if (!data.column_names.empty() &&
      static_cast<Eigen::Index>(data.column_names.size()) != data.predictors.cols())
    throw InvalidInput("column_names size does not match predictor columns");
  if (!data.predictors.allFinite() || !data.response.allFinite())
    throw InvalidInput("dataset contains non-finite values");
}

std::vector<std::string> effective_names(const Dataset& data) {
  if (!data.column_names.empty()) return data.column_names;
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(data.p()));
  for (Eigen::Index j = 0; j < data.p(); ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

}  // namespace reva
