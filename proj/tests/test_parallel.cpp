#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "outlierkit/baselines.hpp"
#include "outlierkit/bp.hpp"
#include "outlierkit/parallel.hpp"
#include "outlierkit/simulation.hpp"

using namespace outlierkit;

TEST_CASE("map_replicates keeps index order and rethrows") {
  auto sq = [](std::uint64_t i) { return static_cast<double>(i * i); };
  CHECK(map_replicates<double>(1000, Exec::Serial, sq) ==
        map_replicates<double>(1000, Exec::Parallel, sq));
  auto boom = [](std::uint64_t i) -> int {
    if (i == 517) throw std::runtime_error("replicate 517");
    return 0;
  };
  CHECK_THROWS_WITH(map_replicates<int>(1000, Exec::Parallel, boom), "replicate 517");
}

TEST_CASE("empirical quantiles") {
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(101 - i);
  auto w = v;
  CHECK(empirical_quantile(v, 0.95) == 95);
  CHECK(empirical_quantile(v, 0.0) == 1);
  const auto q = empirical_quantile_se(w, 0.5);
  CHECK(q.value == 50);
  CHECK(q.standard_error == doctest::Approx(5.0).epsilon(0.2));
  std::vector<double> none;
  CHECK_THROWS(empirical_quantile(none, 0.5));
}

TEST_CASE("serial and OpenMP kernels agree bitwise") {
  const auto& normal = family(FamilyId::Normal);
  CHECK(simulate_critical_value_v(5, 0.05, 20000, 4, Exec::Serial) ==
        simulate_critical_value_v(5, 0.05, 20000, 4, Exec::Parallel));
  CHECK(simulate_exact_critical_value_u(family(FamilyId::Laplace), 40, 5, 0.05, Side::TwoSided, 3000, 4, Exec::Serial) ==
        simulate_exact_critical_value_u(family(FamilyId::Laplace), 40, 5, 0.05, Side::TwoSided, 3000, 4, Exec::Parallel));
  const auto ds = dg_thresholds(normal, 30, 0.05, Estimator::MeanSd, 5000, 4, Exec::Serial);
  const auto dp = dg_thresholds(normal, 30, 0.05, Estimator::MeanSd, 5000, 4, Exec::Parallel);
  CHECK(ds.g_sym == dp.g_sym);
  CHECK(ds.h_half == dp.h_half);
  CHECK(rosner_simulated_lambdas(20, 3, 0.05, Side::TwoSided, 3000, 4, Exec::Serial) ==
        rosner_simulated_lambdas(20, 3, 0.05, Side::TwoSided, 3000, 4, Exec::Parallel));
  CHECK(simulate_baseline_critical(BaselineMethod::Hawkins, 40, 5, 0.05, Side::Right, 3000, 4, Exec::Serial) ==
        simulate_baseline_critical(BaselineMethod::Hawkins, 40, 5, 0.05, Side::Right, 3000, 4, Exec::Parallel));

  MethodSpec bp;
  const auto prepared = prepare_classifier(bp, normal, 60);
  const auto spec = ContaminationSpec::exponential(1, ContaminationSide::Both, 6);
  const auto s = run_experiment(prepared, normal, 60, spec, 1000, 12, Exec::Serial);
  const auto p = run_experiment(prepared, normal, 60, spec, 1000, 12, Exec::Parallel);
  CHECK(s.fingerprint == p.fingerprint);
  CHECK(s.d_on == p.d_on);
  CHECK(s.se_d_on == p.se_d_on);
}
