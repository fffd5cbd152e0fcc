#include "outlierkit/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "outlierkit/errors.hpp"

namespace outlierkit::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == ',' && !quoted) {
      cells.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  cells.push_back(trim(line.substr(start)));
  return cells;
}

// Whole-cell parse of a decimal; NaN and infinities are rejected by the caller.
bool parse_number(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Sample parse_csv(const std::string& text, const std::string& column, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  long row = 0;
  bool first = true;
  std::size_t col = 0;
  Sample sample;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (first) {
      first = false;
      double probe;
      bool header = false;
      for (const auto& c : cells) {
        if (!parse_number(c, probe) && c != "NaN" && c != "nan") header = true;
      }
      if (header) {
        if (column.empty()) {
          col = 0;
        } else {
          bool found = false;
          for (std::size_t k = 0; k < cells.size(); ++k) {
            if (cells[k] == column) {
              col = k;
              found = true;
              break;
            }
          }
          if (!found && all_digits(column)) {
            col = std::stoul(column) - 1;
            found = col < cells.size();
          }
          if (!found) throw DataError(source + ": no column '" + column + "' in header");
        }
        sample.column = std::string(cells[col]);
        continue;
      }
      if (column.empty()) {
        col = 0;
      } else if (all_digits(column) && std::stoul(column) >= 1) {
        col = std::stoul(column) - 1;
      } else {
        throw DataError(source + ": column '" + column + "' requested but the file has no header");
      }
      sample.column = "#" + std::to_string(col + 1);
    }
    if (col >= cells.size()) {
      throw DataError(source + ": row " + std::to_string(row) + " has no column " +
                      std::to_string(col + 1));
    }
    double v;
    if (!parse_number(cells[col], v) || !std::isfinite(v)) {
      throw DataError(source + ": row " + std::to_string(row) + ", column " +
                      std::to_string(col + 1) + ": '" + std::string(cells[col]) +
                      "' is not a finite number");
    }
    sample.values.push_back(v);
    sample.rows.push_back(row);
  }
  if (sample.values.empty()) throw DataError(source + ": no data values");
  return sample;
}

Sample ingest_csv(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), column, path.string());
}

}  // namespace outlierkit::cli
