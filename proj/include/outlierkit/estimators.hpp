#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "outlierkit/distributions.hpp"

namespace outlierkit {

enum class Estimator { MedQn, MeanSd };

std::string_view estimator_name(Estimator e);
Estimator estimator_by_name(std::string_view name);  ///< "robust" / "ml"

/// Location/scale estimates. Both estimators are equivariant: fitting
/// (x - e)/f gives ((mu_hat - e)/f, sigma_hat/f).
struct RobustFit {
  double mu_hat;
  double sigma_hat;
  Estimator method;
};

/// Order-statistic median; midpoint of the two central values for even n.
double median(std::span<const double> x);

/// 1-based rank of the pairwise difference selected by Qn:
/// k = C(h, 2) with h = floor(n/2) + 1 (about a quarter of all n(n-1)/2 pairs).
std::size_t qn_rank(std::size_t n);

/// k-th smallest (1-based) of the n(n-1)/2 differences y[j] - y[i], i < j,
/// of an ascending sample. Pivot-and-count selection: O(n log n) expected
/// time and O(n) memory.
double kth_pairwise_difference(std::span<const double> sorted, std::size_t k);

/// Qn = d * W_(k). Throws DomainError for n < 2 and DegenerateScaleError when
/// the selected difference is zero.
double qn_scale(std::span<const double> x, const Family& f);

/// mu_hat = MED - sigma_hat * F0^{-1}(0.5), sigma_hat = Qn.
RobustFit robust_fit(std::span<const double> x, const Family& f);

/// Arithmetic mean and (n-1)-divisor standard deviation.
RobustFit mean_sd_fit(std::span<const double> x);

RobustFit fit(std::span<const double> x, const Family& f, Estimator e);

/// (x_i - mu_hat) / sigma_hat in input order.
std::vector<double> z_scores(std::span<const double> x, const RobustFit& fit);

/// Indices of `values` in descending order; ties keep ascending index.
std::vector<std::size_t> order_descending(std::span<const double> values);

/// Indices of `values` in ascending order; ties keep ascending index.
std::vector<std::size_t> order_ascending(std::span<const double> values);

}  // namespace outlierkit
