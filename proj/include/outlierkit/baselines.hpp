#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "outlierkit/critical_table.hpp"
#include "outlierkit/distributions.hpp"
#include "outlierkit/estimators.hpp"
#include "outlierkit/parallel.hpp"
#include "outlierkit/report.hpp"

namespace outlierkit {

// ---------------------------------------------------------------- Davies-Gather

/// Simulated thresholds of the generalized Davies-Gather rule for one
/// (family, estimator, n, alpha). Quantiles of the extreme z-scores under F0.
struct DgThresholds {
  double g_n_alpha = 0.0;    ///< (1 - alpha) quantile of Y_(n)
  double h_n_1_alpha = 0.0;  ///< alpha quantile of Y_(1)
  double g_sym = 0.0;        ///< (1 - alpha) quantile of |Y|_(n)
  double g_half = 0.0;       ///< (1 - alpha/2) quantile of Y_(n)
  double h_half = 0.0;       ///< alpha/2 quantile of Y_(1)
  double g_sym_se = 0.0;     ///< Monte Carlo standard error of g_sym (0 when loaded)
  long n = 0;
  double alpha = 0.0;
  Family family = outlierkit::family(FamilyId::Normal);
  Estimator estimator = Estimator::MedQn;
};

/// Throws ConfigError for n < 2 or replicates < 1.
DgThresholds dg_thresholds(const Family& f, long n, double alpha, Estimator e,
                           std::size_t replicates, std::uint64_t seed,
                           Exec exec = Exec::Parallel);

/// Right: z > g; Left: z < h; two-sided symmetric: |z| > g_sym; two-sided
/// non-symmetric: z > g_half or z < h_half. Throws ConfigError when the
/// thresholds were simulated for another n.
OutlierReport dg_classify(std::span<const double> x, const DgThresholds& thr, Side side);

DgThresholds dg_thresholds_from_table(const CriticalValueTable& table, const Family& f,
                                      Estimator e, long n, double alpha);
void dg_thresholds_to_table(CriticalValueTable& table, const DgThresholds& thr,
                            std::uint64_t replicates, std::uint64_t seed);

// ---------------------------------------------------------------- Rosner

/// Which transcription of the lambda approximation to use.
///   Printed:  t = t_{a/(2(n-i-1))}(n-i+1), lambda = t sqrt((n-i)/(n-i-1+t^2)) sqrt(1-1/(n-i+1))
///   Standard: t = t_{a/(2(n-i+1))}(n-i-1), lambda = (n-i) t / sqrt((n-i-1+t^2)(n-i+1))
/// (one-sided variants drop the factor 2).
enum class RosnerLambdaForm { Printed, Standard };

struct RosnerConfig {
  int s = 0;
  double alpha = 0.05;
  Side side = Side::TwoSided;
  std::vector<double> lambda;  ///< lambda_1 .. lambda_s
  bool simulated = false;      ///< lambdas simulated (small n) rather than approximated
};

/// Approximate critical values lambda_1..lambda_s. Throws ConfigError for
/// s < 1 or s >= n - 2.
std::vector<double> rosner_lambdas(long n, int s, double alpha, Side side,
                                   RosnerLambdaForm form = RosnerLambdaForm::Printed);

/// Rosner statistics R_1..R_s and the removed indices of a sample.
struct RosnerTrail {
  std::vector<double> r;
  std::vector<std::size_t> removed;
};
RosnerTrail rosner_statistics(std::span<const double> x, int s, Side side);

/// Lambdas with equal per-step exceedance probability and familywise level
/// alpha, from simulated H0 normal samples.
std::vector<double> rosner_simulated_lambdas(long n, int s, double alpha, Side side,
                                             std::size_t replicates, std::uint64_t seed,
                                             Exec exec = Exec::Parallel);

/// Approximation for n > 25, simulation (flagged) otherwise.
RosnerConfig make_rosner_config(long n, int s, double alpha, Side side,
                                RosnerLambdaForm form = RosnerLambdaForm::Printed,
                                std::size_t replicates = 100'000, std::uint64_t seed = 1);

/// Sequential peeling with mean/sd refit after every removal. The count of
/// outliers is the largest i with R_i > lambda_i.
OutlierReport rosner_classify(std::span<const double> x, const RosnerConfig& config);

// ---------------------------------------------------------------- Bolshev / Hawkins

/// CDF of Thompson's tau with nu degrees of freedom, through
/// t = tau sqrt(nu / (nu + 1 - tau^2)) ~ Student t(nu); support |tau| < sqrt(nu + 1).
double thompson_cdf(double nu, double x);

/// CDF of (X_i - mean)/S (S with divisor n - 1) in a normal sample of size n:
/// thompson_cdf(n - 2, y sqrt(n / (n - 1))).
double studentized_residual_cdf(long n, double y);

struct BolshevStat {
  std::vector<double> tau_values;  ///< tau_i in input order
  double tau_min_ratio = 0.0;      ///< min_{i<=s} tau_(i) / i
  double critical = 0.0;
};

/// Right: tau_i = n (1 - T(Y_i)); TwoSided: tau_i = n (1 - T(|Y_i|)).
BolshevStat bolshev_statistic(std::span<const double> x, int s, Side side);

struct HawkinsStat {
  std::vector<double> b_values;  ///< b+_1 .. b+_s
  double b_max = 0.0;
  double critical = 0.0;
};

HawkinsStat hawkins_statistic(std::span<const double> x, int s);

/// Rejects iff min ratio < critical; order statistic i (ascending tau) is an
/// outlier iff tau_(i)/i < critical.
OutlierReport bolshev_classify(std::span<const double> x, int s, double alpha, Side side,
                               double critical);
/// Looks the critical value up; throws MissingCriticalValueError if absent.
OutlierReport bolshev_classify(std::span<const double> x, int s, double alpha, Side side,
                               const CriticalValueTable& table);

/// Rejects iff B+ > critical; X_(n-i+1) is an outlier iff b+_i > critical.
OutlierReport hawkins_classify(std::span<const double> x, int s, double alpha, double critical);
OutlierReport hawkins_classify(std::span<const double> x, int s, double alpha,
                               const CriticalValueTable& table);

enum class BaselineMethod { Bolshev, Hawkins };

/// H0 critical value: alpha quantile of Bolshev's min ratio, or (1 - alpha)
/// quantile of Hawkins' B+. Normal samples only.
double simulate_baseline_critical(BaselineMethod method, long n, int s, double alpha, Side side,
                                  std::size_t replicates, std::uint64_t seed,
                                  Exec exec = Exec::Parallel, double* standard_error = nullptr);

}  // namespace outlierkit
