#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace outlierkit::cli {

struct Sample {
  std::vector<double> values;
  std::vector<long> rows;  ///< 1-based file line of each value
  std::string column;      ///< header name, or "#k" for headerless input
};

/// Reads one column of a comma separated file. `column` is a header name or
/// a 1-based column number (empty selects the first column). A header row is
/// recognized when its selected cell is not a number. Empty lines are skipped.
/// Throws DataError naming row and column for an unparsable or non-finite
/// cell, and for a file without values.
Sample ingest_csv(const std::filesystem::path& path, const std::string& column = "");

/// Same, from text already in memory; `source` names it in error messages.
Sample parse_csv(const std::string& text, const std::string& column = "",
                 const std::string& source = "<input>");

}  // namespace outlierkit::cli
