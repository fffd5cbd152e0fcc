#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "outlierkit/errors.hpp"
#include "outlierkit/special.hpp"

using namespace outlierkit;

TEST_CASE("normal_cdf matches the erf series") {
  for (double x = -5.0; x <= 5.0; x += 0.125) {
    const double want = static_cast<double>(oracle::normal_cdf(x));
    CHECK(normal_cdf(x) == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(-40.0) >= 0.0);
  CHECK(normal_cdf(40.0) == 1.0);
}

TEST_CASE("normal_quantile inverts the oracle CDF") {
  for (double p : {1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.9999}) {
    const double q = normal_quantile(p);
    CHECK(static_cast<double>(oracle::normal_cdf(q)) == doctest::Approx(p).epsilon(1e-12));
  }
  // Deep tail: the series cancels, integrate the density instead.
  auto phi = [](long double t) { return std::exp(-0.5L * t * t) / std::sqrt(2.0L * M_PIl); };
  for (double p : {1e-12, 1e-8}) {
    const double q = normal_quantile(p);
    CHECK(static_cast<double>(oracle::simpson(phi, q - 12.0, q, p * 1e-13L, 30)) == doctest::Approx(p).epsilon(1e-10));
  }
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::nan("")), DomainError);
}

TEST_CASE("chi2_even_cdf matches quadrature") {
  for (int k : {1, 2, 3, 5, 10}) {
    for (double x : {0.01, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
      const double want = static_cast<double>(oracle::chi2_cdf(2 * k, x));
      CHECK(chi2_even_cdf(k, x) == doctest::Approx(want).epsilon(1e-10));
      CHECK(std::fabs(chi2_even_cdf(k, x) + chi2_even_sf(k, x) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("chi2_even_sf closed forms and edge cases") {
  CHECK(chi2_even_sf(1, 3.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
  CHECK(chi2_even_sf(2, 3.0) == doctest::Approx(std::exp(-1.5) * 2.5).epsilon(1e-15));
  CHECK(chi2_even_sf(3, 0.0) == 1.0);
  CHECK(chi2_even_sf(3, std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(chi2_even_sf(1, 2000.0) == doctest::Approx(std::exp(-1000.0)));
  CHECK(chi2_even_sf(4, 1e-300) == 1.0);
  CHECK_THROWS_AS(chi2_even_sf(0, 1.0), DomainError);
  CHECK_THROWS_AS(chi2_even_cdf(2, -1.0), DomainError);
  CHECK_THROWS_AS(chi2_even_cdf(2, std::nan("")), DomainError);
}

TEST_CASE("student t against closed forms") {
  for (double x : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
    CHECK(student_t_cdf(1.0, x) == doctest::Approx(0.5 + std::atan(x) / M_PI).epsilon(1e-14));
    CHECK(student_t_cdf(2.0, x) ==
          doctest::Approx(0.5 + x / (2.0 * std::sqrt(2.0 + x * x))).epsilon(1e-14));
  }
  const double t = student_t_upper_critical(10.0, 0.025);
  CHECK(t == doctest::Approx(2.228138851986).epsilon(1e-11));
  CHECK(1.0 - student_t_cdf(10.0, t) == doctest::Approx(0.025).epsilon(1e-12));
}
