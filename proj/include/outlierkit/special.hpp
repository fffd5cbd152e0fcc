#pragma once

namespace outlierkit {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile. Rational approximation refined by one Halley
/// step against normal_cdf; relative error near machine precision.
/// Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

/// CDF of the chi-square law with 2k degrees of freedom,
///   F(x) = 1 - exp(-x/2) * sum_{j<k} (x/2)^j / j!
/// Throws DomainError for k < 1 or x < 0 (or NaN).
double chi2_even_cdf(int k, double x);

/// Survival function 1 - chi2_even_cdf(k, x), evaluated directly so that
/// values near 1 and near 0 keep their precision. x = +inf gives 0.
double chi2_even_sf(int k, double x);

/// Student t CDF with nu degrees of freedom.
double student_t_cdf(double nu, double x);

/// Upper-tail critical value: t such that P{T_nu > t} = upper_tail.
double student_t_upper_critical(double nu, double upper_tail);

}  // namespace outlierkit
