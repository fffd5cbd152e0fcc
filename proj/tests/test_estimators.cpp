#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "outlierkit/errors.hpp"
#include "outlierkit/estimators.hpp"
#include "outlierkit/rng.hpp"

using namespace outlierkit;

namespace {

std::vector<double> sample(std::size_t n, std::uint64_t seed, const Family& f) {
  ReplicateRng rng(seed, 0);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.draw(f);
  return x;
}

}  // namespace

TEST_CASE("qn rank is C(floor(n/2)+1, 2)") {
  CHECK(qn_rank(2) == 1);
  CHECK(qn_rank(3) == 1);
  CHECK(qn_rank(4) == 3);
  CHECK(qn_rank(10) == 15);
  CHECK(qn_rank(20) == 55);
  CHECK(qn_rank(101) == 1275);
}

TEST_CASE("kth pairwise difference matches enumeration") {
  const auto& normal = family(FamilyId::Normal);
  for (std::size_t n = 2; n <= 60; ++n) {
    auto x = sample(n, 100 + n, normal);
    std::sort(x.begin(), x.end());
    const std::size_t total = n * (n - 1) / 2;
    for (std::size_t k : {std::size_t{1}, qn_rank(n), (total + 1) / 2, total}) {
      CHECK(kth_pairwise_difference(x, k) == oracle::kth_pair_brute(x, k));
    }
  }
  // Heavy ties.
  std::vector<double> t = {1, 1, 1, 2, 2, 3, 3, 3, 3, 7};
  for (std::size_t k = 1; k <= 45; ++k) CHECK(kth_pairwise_difference(t, k) == oracle::kth_pair_brute(t, k));
}

TEST_CASE("qn scale and robust fit") {
  const auto& normal = family(FamilyId::Normal);
  CHECK(qn_scale(std::vector<double>{0, 1}, normal) == normal.d);
  // Pairs 1,2,3,4,6,7; rank C(3,2) = 3.
  CHECK(qn_scale(std::vector<double>{1, 2, 4, 8}, normal) == doctest::Approx(3 * 2.2219));
  const auto five = mean_sd_fit(std::vector<double>{1, 2, 3, 4, 5});
  CHECK(five.mu_hat == 3.0);
  CHECK(five.sigma_hat == doctest::Approx(std::sqrt(2.5)));
  std::vector<double> x = {3.1, -0.4, 2.2, 0.9, 1.7, -1.3, 0.0, 5.5, 1.1};
  CHECK(qn_scale(x, normal) == doctest::Approx(normal.d * oracle::kth_pair_brute(x, qn_rank(9))));
  CHECK(median(x) == 1.1);
  std::vector<double> even = {4, 1, 3, 2};
  CHECK(median(even) == 2.5);

  const auto& ev1 = family(FamilyId::ExtremeValueI);
  const auto fit1 = robust_fit(x, ev1);
  // mu = MED - sigma * F0^{-1}(1/2) with F0^{-1}(1/2) = ln ln 2
  CHECK(fit1.mu_hat == doctest::Approx(1.1 - fit1.sigma_hat * std::log(std::log(2.0))));
  CHECK(fit1.method == Estimator::MedQn);

  const auto ml = mean_sd_fit(x);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / 9.0;
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  CHECK(ml.mu_hat == doctest::Approx(mean));
  CHECK(ml.sigma_hat == doctest::Approx(std::sqrt(ss / 8.0)));
}

TEST_CASE("normal Qn is consistent for sigma") {
  const auto& normal = family(FamilyId::Normal);
  double acc = 0;
  for (int r = 0; r < 20; ++r) acc += qn_scale(sample(2000, 900 + r, normal), normal);
  CHECK(acc / 20 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("fits are location-scale equivariant") {
  for (const auto& f : all_families()) {
    auto x = sample(37, 5, f);
    for (auto e : {Estimator::MedQn, Estimator::MeanSd}) {
      const auto a = fit(x, f, e);
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] - 4.0) / 0.25;
      const auto b = fit(y, f, e);
      CHECK(b.mu_hat == doctest::Approx((a.mu_hat - 4.0) / 0.25).epsilon(1e-12));
      CHECK(b.sigma_hat == doctest::Approx(a.sigma_hat / 0.25).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate and invalid input") {
  const auto& normal = family(FamilyId::Normal);
  std::vector<double> same(10, 2.0);
  CHECK_THROWS_AS(qn_scale(same, normal), DegenerateScaleError);
  std::vector<double> one = {1.0};
  CHECK_THROWS_AS(qn_scale(one, normal), DomainError);
  std::vector<double> none;
  CHECK_THROWS_AS(median(none), DomainError);
  CHECK(estimator_by_name("robust") == Estimator::MedQn);
  CHECK(estimator_by_name("ml") == Estimator::MeanSd);
  CHECK_THROWS_AS(estimator_by_name("huber"), DomainError);
}

TEST_CASE("orderings keep ascending index on ties") {
  std::vector<double> v = {1, 3, 3, 0, 3};
  CHECK(order_descending(v) == std::vector<std::size_t>{1, 2, 4, 0, 3});
  CHECK(order_ascending(v) == std::vector<std::size_t>{3, 0, 1, 2, 4});
  const auto z = z_scores(v, RobustFit{1.0, 2.0, Estimator::MeanSd});
  CHECK(z[1] == 1.0);
  CHECK(z[3] == -0.5);
}
