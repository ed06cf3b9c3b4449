#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reva/dataset.hpp"

namespace reva {

/// Shortest-general formatting at the given significant-digit count,
/// locale-independent ('.' decimal point always).
std::string format_double(double value, int precision = 6);

/// Strict CSV reader: header row, comma separators, '.' decimals, equal
/// column counts, all values finite. Lines starting with '#' are skipped.
/// The named response column becomes the response; all others predictors.
/// Throws CsvError on malformed input and InvalidInput when the response
/// column is missing.
Dataset read_dataset_csv(std::istream& in, const std::string& response_column);
Dataset read_dataset_csv_file(const std::string& path, const std::string& response_column);

}  // namespace reva
