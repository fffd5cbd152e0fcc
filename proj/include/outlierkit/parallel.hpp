#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string_view>
#include <vector>

#include <omp.h>

#include "outlierkit/errors.hpp"

namespace outlierkit {

/// Execution of a replicate loop. Serial is the reference implementation;
/// Parallel must produce bitwise-identical results because each replicate
/// seeds its own stream from (seed, index) and writes its own slot.
enum class Exec { Serial, Parallel };

inline std::string_view exec_name(Exec e) { return e == Exec::Serial ? "serial" : "openmp"; }

/// Evaluates fn(index) for index = 0..count-1 and returns the results in
/// index order. The first exception thrown by any replicate is rethrown
/// after the loop.
template <class T, class Fn>
std::vector<T> map_replicates(std::size_t count, Exec exec, Fn&& fn) {
  std::vector<T> out(count);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(static_cast<std::uint64_t>(i));
    return out;
  }
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(outlierkit_map_replicates)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Inverse empirical CDF: the ceil(prob * R)-th smallest of R values
/// (clamped to [1, R]). Reorders `values`.
inline double empirical_quantile(std::vector<double>& values, double prob) {
  if (values.empty()) throw DomainError("empirical_quantile of no values");
  const auto r = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(prob * r - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  const auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

/// Empirical quantile with a distribution-free Monte Carlo standard error:
/// half the spread between the order statistics one binomial standard
/// deviation below and above the quantile's rank. Sorts `values`.
struct QuantileEstimate {
  double value;
  double standard_error;
};

inline QuantileEstimate empirical_quantile_se(std::vector<double>& values, double prob) {
  if (values.empty()) throw DomainError("empirical_quantile of no values");
  std::sort(values.begin(), values.end());
  const auto r = static_cast<double>(values.size());
  auto at = [&](double p) {
    auto rank = static_cast<std::size_t>(std::ceil(p * r - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
  };
  const double spread = std::sqrt(prob * (1.0 - prob) / r);
  return {at(prob), 0.5 * (at(prob + spread) - at(prob - spread))};
}

}  // namespace outlierkit
