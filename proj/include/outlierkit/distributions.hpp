#pragma once

#include <array>
#include <span>
#include <string_view>

namespace outlierkit {

enum class FamilyId { Normal, ExtremeValueI, ExtremeValueII, Logistic, Laplace, Cauchy };

/// Max-domain of attraction of the standardized family: Gumbel (gamma = 0)
/// or Frechet (gamma > 0).
enum class GammaClass { Gumbel, Frechet };

enum class Side { Left, Right, TwoSided };

/// A standardized baseline distribution F0 of a location-scale family.
///
/// Extreme value I is the minimum type, F0(x) = 1 - exp(-e^x); extreme value
/// II is the maximum type, F0(x) = exp(-e^-x).
struct Family {
  FamilyId id;
  std::string_view name;
  GammaClass gamma_class;
  double d;  ///< Qn consistency constant 1/K0^{-1}(5/8)
  bool symmetric;

  friend bool operator==(const Family& a, const Family& b) { return a.id == b.id; }
};

const Family& family(FamilyId id);
std::span<const Family> all_families();

/// Looks a family up by name ("normal", "ev1", "extreme-value-i", "logistic",
/// ...), case-insensitive. Throws DomainError for unknown names.
const Family& family_by_name(std::string_view name);

std::string_view side_name(Side side);
Side side_by_name(std::string_view name);

double cdf(const Family& f, double x);
double density(const Family& f, double x);

/// F0^{-1}(p). Throws DomainError unless 0 < p < 1.
double quantile(const Family& f, double p);

/// CDF K0 of Y1 - Y2 for two independent standardized draws.
double pair_difference_cdf(const Family& f, double x);

/// The tabulated Qn constant d of the family.
double qn_pair_cdf_constant(const Family& f);

/// Extreme-value normalizing constants of the sample maximum (b_n, a_n)
/// and of the negated sample minimum (b*_n, a*_n).
struct NormalizingConstants {
  long n;
  double b_n;
  double a_n;
  double b_star_n;
  double a_star_n;
};

/// Closed forms per family where they exist; Normal uses a_n = 1/b_n.
/// Throws DomainError for n < 2.
NormalizingConstants normalizing_constants(const Family& f, long n);

/// Per-observation level alpha_n = 1 - (1 - alpha_bar)^(1/n).
double outlier_level(long n, double alpha_bar);

/// Outlier region of a location-scale member F0((x - mu)/sigma) for sample
/// size n: an observation is an outlier iff x < lower or x > upper. One-sided
/// regions put the unused bound at -inf/+inf; two-sided regions split alpha_n
/// evenly between tails.
struct OutlierRegion {
  Side side;
  double alpha_n;
  double lower;
  double upper;

  bool contains(double x) const { return x < lower || x > upper; }
};

OutlierRegion outlier_region(const Family& f, double mu, double sigma, long n, double alpha_bar,
                             Side side);

}  // namespace outlierkit
