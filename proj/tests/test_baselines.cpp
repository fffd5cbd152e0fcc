#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "outlierkit/baselines.hpp"
#include "outlierkit/errors.hpp"
#include "outlierkit/rng.hpp"
#include "outlierkit/simulation.hpp"

using namespace outlierkit;

namespace {

const std::vector<double> kWorked = {6.10,  10,    6.20,  -0.08, 0.63, -0.54, 1.37,
                                     0.46,  -0.22, 0.94,  -0.69, -0.0, 0.05,  -0.20,
                                     -0.25, -0.64, -6.30, -5.50, -12.10, -20};

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed, std::uint64_t index = 0) {
  ReplicateRng rng(seed, index);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.draw(family(FamilyId::Normal));
  return x;
}

double rejection_rate(const std::function<OutlierReport(std::span<const double>)>& classify,
                      std::size_t n, int reps, std::uint64_t seed) {
  int hits = 0;
  for (int r = 0; r < reps; ++r) {
    if (classify(normal_sample(n, seed, static_cast<std::uint64_t>(r))).decision ==
        Decision::OutliersFound) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / reps;
}

}  // namespace

TEST_CASE("Davies-Gather thresholds") {
  const auto& normal = family(FamilyId::Normal);
  const auto a = dg_thresholds(normal, 100, 0.05, Estimator::MedQn, 20000, 5);
  const auto b = dg_thresholds(normal, 100, 0.05, Estimator::MedQn, 20000, 5, Exec::Serial);
  CHECK(a.g_sym == b.g_sym);
  CHECK(a.g_n_alpha == b.g_n_alpha);
  CHECK(a.g_n_alpha > quantile(normal, 1.0 - 1.0 / 100));
  CHECK(a.h_n_1_alpha < -quantile(normal, 1.0 - 1.0 / 100));
  CHECK(a.g_sym > a.g_n_alpha);
  CHECK(a.g_half > a.g_n_alpha);
  CHECK(a.g_sym_se > 0);
  CHECK_THROWS_AS(dg_thresholds(normal, 1, 0.05, Estimator::MedQn, 100, 5), ConfigError);
}

TEST_CASE("Davies-Gather classification") {
  const auto& normal = family(FamilyId::Normal);
  const auto thr = dg_thresholds(normal, 20, 0.05, Estimator::MedQn, 20000, 5);
  CHECK(thr.g_sym < 5.0);
  const auto rep = dg_classify(kWorked, thr, Side::TwoSided);
  const auto all = rep.all_outliers();
  CHECK(std::count(all.begin(), all.end(), 18) == 1);
  CHECK(std::count(all.begin(), all.end(), 19) == 1);
  CHECK(rep.method == "dg-robust");

  std::vector<double> y(kWorked.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 3.0 * kWorked[i] - 7.0;
  auto sorted = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted(dg_classify(y, thr, Side::TwoSided).all_outliers()) == sorted(all));

  std::vector<double> grid(20);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = quantile(normal, (i + 0.5) / 20.0);
  const auto quiet = dg_classify(grid, thr, Side::TwoSided);
  CHECK(quiet.decision == Decision::NoOutliers);
  CHECK(quiet.all_outliers().empty());
  CHECK_THROWS(dg_classify(std::vector<double>(10, 1.0), thr, Side::TwoSided));

  CriticalValueTable table;
  dg_thresholds_to_table(table, thr, 20000, 5);
  const auto back = dg_thresholds_from_table(table, normal, Estimator::MedQn, 20, 0.05);
  CHECK(back.g_sym == thr.g_sym);
  CHECK(back.h_half == thr.h_half);
  CHECK_THROWS_AS(dg_thresholds_from_table(table, normal, Estimator::MedQn, 21, 0.05),
                  MissingCriticalValueError);
}

TEST_CASE("Rosner lambdas") {
  // Standard form at i = 1: (n-1) t / sqrt((n-2+t^2) n), t the upper a/(2n) point of t(n-2).
  const long n = 50;
  boost::math::students_t t48(48);
  const double t = boost::math::quantile(boost::math::complement(t48, 0.05 / (2.0 * n)));
  const double ref = (n - 1) * t / std::sqrt((n - 2 + t * t) * n);
  const auto std_l = rosner_lambdas(n, 5, 0.05, Side::TwoSided, RosnerLambdaForm::Standard);
  CHECK(std_l[0] == doctest::Approx(ref).epsilon(1e-12));
  const auto printed = rosner_lambdas(n, 5, 0.05, Side::TwoSided);
  REQUIRE(printed.size() == 5);
  CHECK(printed[0] == doctest::Approx(std_l[0]).epsilon(0.02));
  const auto strict = rosner_lambdas(n, 5, 0.01, Side::TwoSided);
  for (int i = 0; i < 5; ++i) CHECK(strict[i] > printed[i]);
  CHECK_THROWS_AS(rosner_lambdas(10, 8, 0.05, Side::TwoSided), ConfigError);
  CHECK_THROWS_AS(rosner_lambdas(10, 0, 0.05, Side::TwoSided), ConfigError);
}

TEST_CASE("Rosner statistics and classification") {
  auto x = normal_sample(50, 3);
  x[17] = 1e6;
  const auto cfg = make_rosner_config(50, 5, 0.05, Side::TwoSided);
  CHECK_FALSE(cfg.simulated);
  const auto rep = rosner_classify(x, cfg);
  CHECK(rep.all_outliers() == std::vector<std::size_t>{17});

  std::vector<double> tie = {0.1, 5.0, -0.2, 0.3, 5.0, 0.0, -0.4, 0.2, 0.05, -0.1};
  const auto trail = rosner_statistics(tie, 2, Side::TwoSided);
  CHECK(trail.removed[0] == 1);
  CHECK(trail.removed[1] == 4);
  // R_1 = max |x - mean| / sd.
  double mean = 0;
  for (double v : tie) mean += v;
  mean /= 10;
  double ss = 0;
  for (double v : tie) ss += (v - mean) * (v - mean);
  CHECK(trail.r[0] == doctest::Approx((5.0 - mean) / std::sqrt(ss / 9)));

  const auto small = make_rosner_config(20, 3, 0.05, Side::TwoSided, RosnerLambdaForm::Printed,
                                        4000, 1);
  CHECK(small.simulated);
  CHECK(small.lambda.size() == 3);
}

TEST_CASE("Rosner level under H0 stays below nominal") {
  const auto cfg = make_rosner_config(100, 15, 0.05, Side::TwoSided);
  const double rate =
      rejection_rate([&](std::span<const double> x) { return rosner_classify(x, cfg); }, 100, 10000, 21);
  CHECK(rate >= 0.01);
  CHECK(rate <= 0.06);
}

TEST_CASE("Thompson distribution") {
  CHECK(thompson_cdf(18, 0.0) == doctest::Approx(0.5));
  CHECK(thompson_cdf(18, std::sqrt(19.0) - 1e-12) == doctest::Approx(1.0));
  CHECK(thompson_cdf(18, 10.0) == 1.0);
  CHECK(thompson_cdf(18, -10.0) == 0.0);
  // Studentized residual of a normal sample, simulated.
  const int reps = 200000;
  int below = 0;
  for (int r = 0; r < reps; ++r) {
    const auto x = normal_sample(20, 8, static_cast<std::uint64_t>(r));
    double m = 0;
    for (double v : x) m += v;
    m /= 20;
    double ss = 0;
    for (double v : x) ss += (v - m) * (v - m);
    if ((x[0] - m) / std::sqrt(ss / 19) <= 1.5) ++below;
  }
  CHECK(static_cast<double>(below) / reps == doctest::Approx(studentized_residual_cdf(20, 1.5)).epsilon(0.01));
  CHECK(studentized_residual_cdf(20, 1.5) == thompson_cdf(18, 1.5 * std::sqrt(20.0 / 19.0)));
}

TEST_CASE("Bolshev") {
  const double crit = simulate_baseline_critical(BaselineMethod::Bolshev, 30, 5, 0.05,
                                                 Side::TwoSided, 20000, 1);
  CHECK(crit > 0);
  const double rate = rejection_rate(
      [&](std::span<const double> x) { return bolshev_classify(x, 5, 0.05, Side::TwoSided, crit); },
      30, 10000, 99);
  CHECK(rate == doctest::Approx(0.05).epsilon(0.2));
  auto x = normal_sample(30, 4);
  x[3] = 40.0;
  const auto rep = bolshev_classify(x, 5, 0.05, Side::TwoSided, crit);
  CHECK(rep.all_outliers() == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(bolshev_statistic(x, 5, Side::Left), ConfigError);
  CriticalValueTable empty;
  try {
    bolshev_classify(x, 5, 0.05, Side::TwoSided, empty);
    FAIL("expected MissingCriticalValueError");
  } catch (const MissingCriticalValueError& e) {
    CHECK(std::string(e.what()).find("simulate-critical") != std::string::npos);
  }
  CHECK_THROWS_AS(bolshev_classify(std::vector<double>(30, 2.0), 5, 0.05, Side::TwoSided, crit),
                  DegenerateScaleError);
}

TEST_CASE("Hawkins") {
  const double crit =
      simulate_baseline_critical(BaselineMethod::Hawkins, 100, 5, 0.05, Side::Right, 20000, 1);
  const double rate = rejection_rate(
      [&](std::span<const double> x) { return hawkins_classify(x, 5, 0.05, crit); }, 100, 4000, 5);
  CHECK(rate == doctest::Approx(0.05).epsilon(0.3));
  MethodSpec m;
  m.id = MethodId::Hawkins;
  m.side = Side::Right;
  m.critical_replicates = 20000;
  const auto prepared = prepare_classifier(m, family(FamilyId::Normal), 100);
  const auto one = run_experiment(prepared, family(FamilyId::Normal), 100,
                                  ContaminationSpec::truncated_normal(10, 0.01, ContaminationSide::Right, 1),
                                  500, 3);
  CHECK(one.d_oo == doctest::Approx(1.0).epsilon(0.02));
  CHECK(one.d_no == doctest::Approx(3.99).epsilon(0.02));
  const auto five = run_experiment(prepared, family(FamilyId::Normal), 100,
                                   ContaminationSpec::truncated_normal(10, 0.01, ContaminationSide::Right, 5),
                                   500, 3);
  CHECK(five.d_no < 0.05);
  CHECK(five.d_oo == doctest::Approx(3.96).epsilon(0.03));
}
