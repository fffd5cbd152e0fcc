#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "outlierkit/distributions.hpp"
#include "outlierkit/estimators.hpp"

namespace outlierkit {

enum class Decision { NoOutliers, OutliersFound };

/// Configuration of the BP procedure.
struct BpConfig {
  Family family = outlierkit::family(FamilyId::Normal);
  double alpha = 0.05;
  Side side = Side::TwoSided;
  int s = 5;
  /// Critical value compared with every U statistic; for two-sided search on
  /// a non-symmetric family this is the per-side value at level alpha/2.
  double critical_value = 0.0;
  bool use_exact_critical = false;
};

/// One step of the BP stepwise search.
struct BpStepRecord {
  Side side = Side::Right;  ///< Right, Left, or TwoSided (|z| search)
  int step_index = 1;
  long sample_size_used = 0;     ///< working sample size m
  std::vector<double> u_values;  ///< U of ranks 1..s of the working sample
  int d_l = 0;                   ///< largest rank whose U exceeds the critical value
  std::optional<std::size_t> rejected_this_step;
  bool saturated = false;  ///< some Frechet-class argument left the chi-square domain
};

/// Classification produced by every method. Indices are 0-based positions in
/// the input sample, most extreme first.
struct OutlierReport {
  std::string method;
  Decision decision = Decision::NoOutliers;
  std::vector<std::size_t> outlier_indices_right;
  std::vector<std::size_t> outlier_indices_left;
  std::vector<BpStepRecord> trail;
  RobustFit fit{0.0, 1.0, Estimator::MedQn};
  std::optional<BpConfig> config_echo;
  /// Method-specific statistic trail (Rosner R_i, Hawkins b_k, Bolshev
  /// tau_(i)/i, DG extreme z-scores, BP step-1 U values).
  std::vector<double> statistics;
  /// Thresholds the statistics were compared with (one or per rank).
  std::vector<double> critical_values;
  /// The search hit the n/2 rejection cap and stopped early.
  bool rejection_cap_hit = false;

  std::size_t outlier_count() const {
    return outlier_indices_right.size() + outlier_indices_left.size();
  }

  std::vector<std::size_t> all_outliers() const {
    std::vector<std::size_t> all = outlier_indices_right;
    all.insert(all.end(), outlier_indices_left.begin(), outlier_indices_left.end());
    return all;
  }
};

}  // namespace outlierkit
