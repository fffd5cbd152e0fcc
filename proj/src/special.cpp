#include "outlierkit/special.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "outlierkit/errors.hpp"

namespace outlierkit {

namespace {

// Acklam's rational approximation to the normal quantile (relative error
// about 1.2e-9 before refinement).
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                         1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                         6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                         -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                         3.754408661907416e+00};
constexpr double kPLow = 0.02425;

// Quantile for p <= 0.5, where normal_cdf(x) is evaluated without
// cancellation.
double lower_normal_quantile(double p) {
  double x;
  if (p < kPLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
        ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
        (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
  }
  if (p > 1e-300) {
    // Halley step on F(x) - p.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must lie in (0,1), got " + std::to_string(p));
  }
  if (p <= 0.5) return lower_normal_quantile(p);
  return -lower_normal_quantile(1.0 - p);
}

double chi2_even_sf(int k, double x) {
  if (k < 1) throw DomainError("chi2_even: k must be >= 1");
  if (!(x >= 0.0)) throw DomainError("chi2_even: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double h = 0.5 * x;
  double sum = 0.0;
  if (h < 700.0) {
    double term = std::exp(-h);
    for (int j = 0; j < k; ++j) {
      if (j > 0) term *= h / j;
      sum += term;
    }
  } else {
    const double log_h = std::log(h);
    for (int j = 0; j < k; ++j) sum += std::exp(-h + j * log_h - std::lgamma(j + 1.0));
  }
  return std::min(sum, 1.0);
}

double chi2_even_cdf(int k, double x) {
  const double sf = chi2_even_sf(k, x);
  if (sf < 0.5) return 1.0 - sf;
  // Lower tail directly: sum_{j>=k} e^{-h} h^j / j!.
  const double h = 0.5 * x;
  double term = std::exp(-h + k * std::log(h) - std::lgamma(k + 1.0));
  double sum = 0.0;
  for (int j = k; j < k + 10000; ++j) {
    if (j > k) term *= h / j;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double student_t_cdf(double nu, double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  boost::math::students_t_distribution<double> dist(nu);
  return boost::math::cdf(dist, x);
}

double student_t_upper_critical(double nu, double upper_tail) {
  if (!(upper_tail > 0.0 && upper_tail < 1.0)) {
    throw DomainError("student_t_upper_critical: tail probability must lie in (0,1)");
  }
  boost::math::students_t_distribution<double> dist(nu);
  return boost::math::quantile(boost::math::complement(dist, upper_tail));
}

}  // namespace outlierkit
