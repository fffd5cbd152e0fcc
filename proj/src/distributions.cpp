#include "outlierkit/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "outlierkit/errors.hpp"
#include "outlierkit/special.hpp"

namespace outlierkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// d constants of the Qn estimator, tabulated to 4 decimals.
constexpr std::array<Family, 6> kFamilies{{
    {FamilyId::Normal, "normal", GammaClass::Gumbel, 2.2219, true},
    {FamilyId::ExtremeValueI, "ev1", GammaClass::Gumbel, 1.9576, false},
    {FamilyId::ExtremeValueII, "ev2", GammaClass::Gumbel, 1.9576, false},
    {FamilyId::Logistic, "logistic", GammaClass::Gumbel, 1.3079, true},
    {FamilyId::Laplace, "laplace", GammaClass::Gumbel, 1.9306, true},
    {FamilyId::Cauchy, "cauchy", GammaClass::Frechet, 1.2071, true},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_probability(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(what) + ": p must lie in (0,1), got " + std::to_string(p));
  }
}

}  // namespace

const Family& family(FamilyId id) { return kFamilies[static_cast<std::size_t>(id)]; }

std::span<const Family> all_families() { return kFamilies; }

const Family& family_by_name(std::string_view name) {
  const std::string key = lower(name);
  if (key == "normal" || key == "gaussian") return family(FamilyId::Normal);
  if (key == "ev1" || key == "evi" || key == "extreme-value-i" || key == "gumbel-min") {
    return family(FamilyId::ExtremeValueI);
  }
  if (key == "ev2" || key == "evii" || key == "extreme-value-ii" || key == "gumbel") {
    return family(FamilyId::ExtremeValueII);
  }
  if (key == "logistic") return family(FamilyId::Logistic);
  if (key == "laplace") return family(FamilyId::Laplace);
  if (key == "cauchy") return family(FamilyId::Cauchy);
  throw DomainError("unknown family '" + std::string(name) + "'");
}

std::string_view side_name(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::TwoSided: return "two";
  }
  return "?";
}

Side side_by_name(std::string_view name) {
  const std::string key = lower(name);
  if (key == "left") return Side::Left;
  if (key == "right") return Side::Right;
  if (key == "two" || key == "two-sided" || key == "both") return Side::TwoSided;
  throw DomainError("unknown side '" + std::string(name) + "'");
}

double cdf(const Family& f, double x) {
  switch (f.id) {
    case FamilyId::Normal: return normal_cdf(x);
    case FamilyId::ExtremeValueI: return -std::expm1(-std::exp(x));
    case FamilyId::ExtremeValueII: return std::exp(-std::exp(-x));
    case FamilyId::Logistic:
      return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    case FamilyId::Laplace: return x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    case FamilyId::Cauchy:
      if (x < -1.0) return std::atan(-1.0 / x) / kPi;
      return 0.5 + std::atan(x) / kPi;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double density(const Family& f, double x) {
  switch (f.id) {
    case FamilyId::Normal: return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
    case FamilyId::ExtremeValueI: return std::exp(x - std::exp(x));
    case FamilyId::ExtremeValueII: return std::exp(-x - std::exp(-x));
    case FamilyId::Logistic: {
      const double e = std::exp(-std::abs(x));
      return e / ((1.0 + e) * (1.0 + e));
    }
    case FamilyId::Laplace: return 0.5 * std::exp(-std::abs(x));
    case FamilyId::Cauchy: return 1.0 / (kPi * (1.0 + x * x));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double quantile(const Family& f, double p) {
  check_probability(p, "quantile");
  switch (f.id) {
    case FamilyId::Normal: return normal_quantile(p);
    case FamilyId::ExtremeValueI: return std::log(-std::log1p(-p));
    case FamilyId::ExtremeValueII: return -std::log(-std::log(p));
    case FamilyId::Logistic:
      return p < 0.5 ? std::log(p / (1.0 - p)) : -std::log((1.0 - p) / p);
    case FamilyId::Laplace: return p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
    case FamilyId::Cauchy:
      if (p == 0.5) return 0.0;
      return p < 0.5 ? -1.0 / std::tan(kPi * p) : 1.0 / std::tan(kPi * (1.0 - p));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double pair_difference_cdf(const Family& f, double x) {
  // All K0 are symmetric about 0.
  if (x < 0) return 1.0 - pair_difference_cdf(f, -x);
  switch (f.id) {
    case FamilyId::Normal: return normal_cdf(x / std::numbers::sqrt2);
    case FamilyId::ExtremeValueI:
    case FamilyId::ExtremeValueII: return 1.0 / (1.0 + std::exp(-x));
    case FamilyId::Logistic: {
      if (x < 1e-4) return 0.5 + x / 6.0;
      const double e = std::exp(-x);
      const double one_minus = -std::expm1(-x);
      return 1.0 - ((x - 1.0) * e + e * e) / (one_minus * one_minus);
    }
    case FamilyId::Laplace: return 1.0 - 0.5 * (1.0 + 0.5 * x) * std::exp(-x);
    case FamilyId::Cauchy: return 0.5 + std::atan(0.5 * x) / kPi;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double qn_pair_cdf_constant(const Family& f) { return f.d; }

NormalizingConstants normalizing_constants(const Family& f, long n) {
  if (n < 2) throw DomainError("normalizing_constants: n must be >= 2");
  const double nd = static_cast<double>(n);
  NormalizingConstants c{n, 0, 0, 0, 0};
  // Shared pieces of the two extreme-value rows.
  const double ln_n = std::log(nd);
  const double log1m = std::log1p(-1.0 / nd);  // ln(1 - 1/n)
  switch (f.id) {
    case FamilyId::Normal:
      c.b_n = -normal_quantile(1.0 / nd);
      c.a_n = n > 2 ? 1.0 / c.b_n : 1.0 / (nd * density(f, c.b_n));
      c.b_star_n = c.b_n;
      c.a_star_n = c.a_n;
      break;
    case FamilyId::ExtremeValueI:
      c.b_n = std::log(ln_n);
      c.a_n = 1.0 / ln_n;
      c.b_star_n = -std::log(-log1m);
      c.a_star_n = -1.0 / ((nd - 1.0) * log1m);
      break;
    case FamilyId::ExtremeValueII:
      c.b_n = -std::log(-log1m);
      c.a_n = -1.0 / ((nd - 1.0) * log1m);
      c.b_star_n = std::log(ln_n);
      c.a_star_n = 1.0 / ln_n;
      break;
    case FamilyId::Logistic:
      c.b_n = std::log(nd - 1.0);
      c.a_n = nd / (nd - 1.0);
      c.b_star_n = c.b_n;
      c.a_star_n = c.a_n;
      break;
    case FamilyId::Laplace:
      c.b_n = std::log(nd / 2.0);
      c.a_n = 1.0;
      c.b_star_n = c.b_n;
      c.a_star_n = c.a_n;
      break;
    case FamilyId::Cauchy: {
      const double t = kPi / nd;
      const double s = std::sin(t);
      c.b_n = 1.0 / std::tan(t);
      c.a_n = t / (s * s);
      c.b_star_n = c.b_n;
      c.a_star_n = c.a_n;
      break;
    }
  }
  return c;
}

double outlier_level(long n, double alpha_bar) {
  if (n < 1) throw DomainError("outlier_level: n must be >= 1");
  check_probability(alpha_bar, "outlier_level");
  return -std::expm1(std::log1p(-alpha_bar) / static_cast<double>(n));
}

OutlierRegion outlier_region(const Family& f, double mu, double sigma, long n, double alpha_bar,
                             Side side) {
  if (!(sigma > 0.0)) throw DomainError("outlier_region: sigma must be > 0");
  const double an = outlier_level(n, alpha_bar);
  OutlierRegion region{side, an, -kInf, kInf};
  switch (side) {
    case Side::Right: region.upper = mu + sigma * quantile(f, 1.0 - an); break;
    case Side::Left: region.lower = mu + sigma * quantile(f, an); break;
    case Side::TwoSided:
      region.lower = mu + sigma * quantile(f, 0.5 * an);
      region.upper = mu + sigma * quantile(f, 1.0 - 0.5 * an);
      break;
  }
  return region;
}

}  // namespace outlierkit
