#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "outlierkit/distributions.hpp"
#include "outlierkit/errors.hpp"

using namespace outlierkit;

namespace {

// Closed-form F0 and f0 written independently of the library.
struct Law {
  std::function<double(double)> F;
  std::function<double(double)> f;
  double lo;  // integration range holding all but ~1e-16 of the mass
  double hi;
};

Law law(FamilyId id) {
  switch (id) {
    case FamilyId::Normal:
      return {[](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); },
              [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }, -40, 40};
    case FamilyId::ExtremeValueI:
      return {[](double x) { return -std::expm1(-std::exp(x)); },
              [](double x) { return std::exp(x - std::exp(x)); }, -40, 4};
    case FamilyId::ExtremeValueII:
      return {[](double x) { return std::exp(-std::exp(-x)); },
              [](double x) { return std::exp(-x - std::exp(-x)); }, -4, 40};
    case FamilyId::Logistic:
      return {[](double x) { return 1.0 / (1.0 + std::exp(-x)); },
              [](double x) {
                const double e = std::exp(-std::fabs(x));
                return e / ((1.0 + e) * (1.0 + e));
              },
              -60, 60};
    case FamilyId::Laplace:
      return {[](double x) { return x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x); },
              [](double x) { return 0.5 * std::exp(-std::fabs(x)); }, -60, 60};
    case FamilyId::Cauchy:
      return {[](double x) { return 0.5 + std::atan(x) / M_PI; },
              [](double x) { return 1.0 / (M_PI * (1.0 + x * x)); }, -1e300, 1e300};
  }
  throw 0;
}

// K0(x) = P{Y1 - Y2 <= x}; Cauchy differences are Cauchy with scale 2.
double k0_oracle(FamilyId id, double x) {
  if (id == FamilyId::Cauchy) return 0.5 + std::atan(x / 2.0) / M_PI;
  const auto L = law(id);
  auto g = [&](long double y) -> long double {
    return static_cast<long double>(L.F(static_cast<double>(y) + x)) *
           L.f(static_cast<double>(y));
  };
  // Split at 0 so the kinks of the Laplace density are nodes.
  return static_cast<double>(oracle::simpson(g, L.lo, 0.0L, 1e-14L) +
                             oracle::simpson(g, 0.0L, L.hi, 1e-14L));
}

}  // namespace

TEST_CASE("cdf, density and quantile agree with closed forms") {
  for (const auto& f : all_families()) {
    CAPTURE(std::string(f.name));
    const auto L = law(f.id);
    for (double x : {-3.0, -1.0, -0.2, 0.0, 0.4, 1.5, 3.0}) {
      CHECK(cdf(f, x) == doctest::Approx(L.F(x)).epsilon(1e-13));
      CHECK(density(f, x) == doctest::Approx(L.f(x)).epsilon(1e-12));
    }
    for (double p : {1e-6, 0.01, 0.2, 0.5, 0.8, 0.99, 1 - 1e-6}) {
      CHECK(L.F(quantile(f, p)) == doctest::Approx(p).epsilon(1e-11));
    }
    CHECK_THROWS_AS(quantile(f, 0.0), DomainError);
    CHECK_THROWS_AS(quantile(f, 1.0), DomainError);
  }
}

TEST_CASE("pair difference CDF matches convolution quadrature") {
  for (const auto& f : all_families()) {
    CAPTURE(std::string(f.name));
    for (double x : {-2.0, -0.5, 0.0, 0.3, 1.0, 2.5}) {
      CHECK(pair_difference_cdf(f, x) == doctest::Approx(k0_oracle(f.id, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Qn constants d = 1/K0^-1(5/8) reproduce the tabulated values") {
  const std::pair<FamilyId, double> table[] = {
      {FamilyId::Normal, 2.2219},   {FamilyId::ExtremeValueI, 1.9576},
      {FamilyId::ExtremeValueII, 1.9576}, {FamilyId::Logistic, 1.3079},
      {FamilyId::Laplace, 1.9306},  {FamilyId::Cauchy, 1.2071}};
  for (const auto& [id, printed] : table) {
    const auto& f = family(id);
    CAPTURE(std::string(f.name));
    const double q = oracle::bisect([&](double x) { return k0_oracle(id, x); }, 0.625, 0.0, 10.0);
    // The normal entry is the rounded 2.2219 in common use; exact is 1/(sqrt2 Phi^-1(5/8)) = 2.21914.
    CHECK(1.0 / q == doctest::Approx(printed).epsilon(id == FamilyId::Normal ? 1.5e-3 : 6e-5));
    CHECK(f.d == doctest::Approx(printed).epsilon(1e-12));
    CHECK(qn_pair_cdf_constant(f) == f.d);
  }
}

TEST_CASE("normalizing constants satisfy their defining equations") {
  for (const auto& f : all_families()) {
    CAPTURE(std::string(f.name));
    const auto L = law(f.id);
    for (long n : {2L, 5L, 20L, 100L, 1000L, 100000L}) {
      CAPTURE(n);
      const auto c = normalizing_constants(f, n);
      const double nd = static_cast<double>(n);
      CHECK(c.n == n);
      CHECK(1.0 - L.F(c.b_n) == doctest::Approx(1.0 / nd).epsilon(1e-10));
      CHECK(L.F(-c.b_star_n) == doctest::Approx(1.0 / nd).epsilon(1e-10));
      if (f.id == FamilyId::Normal && n > 2) {
        CHECK(c.a_n == doctest::Approx(1.0 / c.b_n).epsilon(1e-14));
        CHECK(c.a_star_n == doctest::Approx(1.0 / c.b_star_n).epsilon(1e-14));
      } else {
        CHECK(c.a_n == doctest::Approx(1.0 / (nd * L.f(c.b_n))).epsilon(1e-10));
        CHECK(c.a_star_n == doctest::Approx(1.0 / (nd * L.f(-c.b_star_n))).epsilon(1e-10));
      }
    }
    CHECK_THROWS_AS(normalizing_constants(f, 1), DomainError);
  }
}

TEST_CASE("outlier level and region") {
  // n alpha_n -> -ln(1 - 0.05) = 0.05129...
  CHECK(1e6 * outlier_level(1000000, 0.05) == doctest::Approx(-std::log(0.95)).epsilon(1e-6));
  CHECK(outlier_level(100, 0.05) == doctest::Approx(1.0 - std::pow(0.95, 0.01)).epsilon(1e-13));
  CHECK(outlier_level(100, 0.05) == doctest::Approx(5.12801e-4).epsilon(1e-5));
  CHECK(outlier_level(1, 0.05) == doctest::Approx(0.05));

  const auto& normal = family(FamilyId::Normal);
  const auto two = outlier_region(normal, 10.0, 2.0, 100, 0.05, Side::TwoSided);
  const double an = outlier_level(100, 0.05);
  CHECK(law(FamilyId::Normal).F((two.upper - 10.0) / 2.0) == doctest::Approx(1.0 - an / 2.0));
  CHECK(two.lower == doctest::Approx(20.0 - two.upper));
  CHECK(two.contains(two.upper + 1e-9));
  CHECK_FALSE(two.contains(10.0));
  const auto right = outlier_region(normal, 0.0, 1.0, 100, 0.05, Side::Right);
  CHECK(std::isinf(right.lower));
  CHECK(law(FamilyId::Normal).F(right.upper) == doctest::Approx(1.0 - an));
  CHECK_THROWS_AS(outlier_region(normal, 0.0, 0.0, 100, 0.05, Side::Right), DomainError);
}

TEST_CASE("family lookup") {
  CHECK(family_by_name("Normal").id == FamilyId::Normal);
  CHECK(family_by_name("gumbel").id == FamilyId::ExtremeValueII);
  CHECK(family_by_name("ev1").id == FamilyId::ExtremeValueI);
  CHECK(family_by_name("cauchy").gamma_class == GammaClass::Frechet);
  CHECK(family_by_name("laplace").symmetric);
  CHECK_FALSE(family_by_name("ev2").symmetric);
  CHECK_THROWS_AS(family_by_name("weibull"), DomainError);
  CHECK(side_by_name("two") == Side::TwoSided);
  CHECK(side_name(Side::Left) == "left");
}
