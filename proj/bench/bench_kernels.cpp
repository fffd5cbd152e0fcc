// Serial reference vs OpenMP kernels: wall time and a bitwise identity check.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "outlierkit/baselines.hpp"
#include "outlierkit/bp.hpp"
#include "outlierkit/simulation.hpp"

using namespace outlierkit;

namespace {

template <class T>
double seconds(const std::function<T()>& fn, T& result) {
  const auto t0 = std::chrono::steady_clock::now();
  result = fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class T>
bool row(const char* name, const std::function<T(Exec)>& kernel, bool (*same)(const T&, const T&)) {
  T a{}, b{};
  const double ts = seconds<T>([&] { return kernel(Exec::Serial); }, a);
  const double tp = seconds<T>([&] { return kernel(Exec::Parallel); }, b);
  const bool ok = same(a, b);
  std::printf("%-34s %9.3f %9.3f %8.2fx  %s\n", name, ts, tp, ts / tp, ok ? "identical" : "MISMATCH");
  return ok;
}

bool same_double(const double& a, const double& b) { return a == b; }

bool same_mc(const McResult& a, const McResult& b) {
  return a.total_oo == b.total_oo && a.total_on == b.total_on && a.total_no == b.total_no &&
         a.total_nn == b.total_nn && a.total_rejecting == b.total_rejecting &&
         a.fingerprint == b.fingerprint;
}

}  // namespace

int main(int argc, char** argv) {
  const double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
  const auto reps = [&](double r) { return static_cast<std::size_t>(r * scale); };
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %9s %9s %9s\n", "kernel", "serial s", "openmp s", "speedup");
  const auto& normal = family(FamilyId::Normal);
  bool ok = true;
  ok &= row<double>(
      "v_0.05(5), 2e5 replicates",
      [&](Exec e) { return simulate_critical_value_v(5, 0.05, reps(2e5), 1, e); }, same_double);
  ok &= row<double>(
      "exact U, normal n=100, 2e4",
      [&](Exec e) {
        return simulate_exact_critical_value_u(normal, 100, 5, 0.05, Side::TwoSided, reps(2e4), 1,
                                               e);
      },
      same_double);
  ok &= row<double>(
      "DG g_sym robust n=100, 2e4",
      [&](Exec e) { return dg_thresholds(normal, 100, 0.05, Estimator::MedQn, reps(2e4), 1, e).g_sym; },
      same_double);
  ok &= row<double>(
      "Bolshev critical n=100, 2e4",
      [&](Exec e) {
        return simulate_baseline_critical(BaselineMethod::Bolshev, 100, 5, 0.05, Side::TwoSided,
                                          reps(2e4), 1, e);
      },
      same_double);
  MethodSpec bp;
  const auto prepared = prepare_classifier(bp, normal, 100);
  ok &= row<McResult>(
      "BP experiment n=100 r=5, 1e4",
      [&](Exec e) {
        return run_experiment(prepared, normal, 100,
                              ContaminationSpec::exponential(1.0, ContaminationSide::Both, 5),
                              reps(1e4), 1, e);
      },
      same_mc);
  return ok ? 0 : 1;
}
