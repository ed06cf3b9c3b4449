#include "reva/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "reva/errors.hpp"

namespace reva {

std::string format_double(double value, int precision) {
  if (value == 0.0) value = 0.0;  // normalize -0
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, precision);
  return std::string(buffer, result.ptr);
}

namespace {

std::vector<std::string> split_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::string trim(const std::string& cell) {
  const auto first = cell.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = cell.find_last_not_of(" \t");
  return cell.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, long line_number) {
  const std::string cell = trim(raw);
  if (cell.empty()) throw CsvError("empty cell", line_number);
  double value = 0.0;
  const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (result.ec != std::errc{} || result.ptr != cell.data() + cell.size())
    throw CsvError("cannot parse numeric value '" + cell + "'", line_number);
  if (!std::isfinite(value)) throw CsvError("non-finite value '" + cell + "'", line_number);
  return value;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in, const std::string& response_column) {
  std::string line;
  long line_number = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    header = split_line(line);
    break;
  }
  if (header.empty()) throw CsvError("missing header row");

  long response_index = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    header[j] = trim(header[j]);
    if (header[j].empty()) throw CsvError("empty column name in header", line_number);
    if (header[j] == response_column) {
      if (response_index >= 0) throw CsvError("duplicate response column", line_number);
      response_index = static_cast<long>(j);
    }
  }
  if (response_index < 0)
    throw InvalidInput("response column '" + response_column + "' not found in header");
  if (header.size() < 2)
    throw InvalidInput("dataset needs at least one predictor column besides the response");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw CsvError("expected " + std::to_string(header.size()) + " cells, got " +
                         std::to_string(cells.size()),
                     line_number);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_cell(cell, line_number));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError("no data rows");

  Dataset data;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(header.size()) - 1;
  data.predictors.resize(n, p);
  data.response.resize(n);
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<long>(j) != response_index) data.column_names.push_back(header[j]);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index pj = 0;
    for (std::size_t j = 0; j < header.size(); ++j) {
      const double value = rows[static_cast<std::size_t>(i)][j];
      if (static_cast<long>(j) == response_index)
        data.response(i) = value;
      else
        data.predictors(i, pj++) = value;
    }
  }
  return data;
}

Dataset read_dataset_csv_file(const std::string& path, const std::string& response_column) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path + "'");
  return read_dataset_csv(in, response_column);
}

}  // namespace reva
