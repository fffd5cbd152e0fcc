#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "outlierkit/distributions.hpp"
#include "outlierkit/parallel.hpp"
#include "outlierkit/report.hpp"

namespace outlierkit {

inline constexpr std::uint64_t kDefaultCriticalSeed = 20240917;
inline constexpr std::size_t kDefaultAsymptoticReplicates = 1'000'000;

/// U statistic of rank i from the normalized extreme w = (y - b)/a:
///   Gumbel class:  1 - F_{chi2(2i)}(2 exp(-w))
///   Frechet class: 1 - F_{chi2(2i)}(2 / (1 + w)),
/// where 1 + w <= 0 sends the chi-square argument to +inf and U to 0
/// (flagged through `saturated`).
double u_from_normalized(double w, int rank, GammaClass g, bool* saturated = nullptr);

/// U+_{(m-i+1)}(m) from the working sample's z-scores sorted descending.
double u_statistic_right(std::span<const double> z_desc, long m, int i, const Family& f);

/// U-_{(i)}(m) from the working sample's z-scores sorted ascending, using
/// the starred constants b*_m, a*_m.
double u_statistic_left(std::span<const double> z_asc, long m, int i, const Family& f);

/// U_{(m-i+1)}(m) from |z| sorted descending with constants at 2m.
/// Throws ConfigError for a non-symmetric family.
double u_statistic_twosided_symmetric(std::span<const double> abs_z_desc, long m, int i,
                                      const Family& f);

/// (1 - alpha) quantile of V(s) = max_{i<=s} 1 - F_{chi2(2i)}(2(E_1 + ... + E_i))
/// over `replicates` draws of standard exponentials.
/// `standard_error`, when given, receives the Monte Carlo standard error.
double simulate_critical_value_v(int s, double alpha, std::size_t replicates, std::uint64_t seed,
                                 Exec exec = Exec::Parallel, double* standard_error = nullptr);

/// v_alpha(s): frozen values for s = 5 at common levels, otherwise simulated
/// once per process (10^6 replicates, default seed) and memoized.
double asymptotic_critical_value(int s, double alpha);

/// Whether v_alpha(s) is available without simulation.
bool has_builtin_critical_value(int s, double alpha);

/// Step-1 statistic U(n, s) of a sample: U+ (Right), U- (Left), the |z|
/// statistic (TwoSided, symmetric family) or max(U+, U-) (TwoSided,
/// non-symmetric family).
double bp_statistic(std::span<const double> x, const Family& f, Side side, int s);

/// Exact finite-sample (1 - alpha) critical value of bp_statistic under F0,
/// by simulation. Parameter-free because the fit is equivariant.
double simulate_exact_critical_value_u(const Family& f, long n, int s, double alpha, Side side,
                                       std::size_t replicates, std::uint64_t seed,
                                       Exec exec = Exec::Parallel,
                                       double* standard_error = nullptr);

/// Configuration using the asymptotic critical value v_alpha(s) (v_{alpha/2}(s)
/// per side for two-sided search on a non-symmetric family).
BpConfig make_bp_config(const Family& f, double alpha, Side side, int s = 5);

/// Configuration using the simulated exact critical value for sample size n.
BpConfig make_exact_bp_config(const Family& f, long n, double alpha, Side side, int s,
                              std::size_t replicates, std::uint64_t seed);

/// The stepwise BP classification. The robust fit is computed once on the
/// full sample; each step shrinks the working size m and re-derives the
/// normalizing constants. Throws DomainError for n < 2, DegenerateScaleError
/// for a zero scale and ConfigError for s > n/2 or an invalid critical value.
OutlierReport bp_classify(std::span<const double> x, const BpConfig& config);

/// Shape-scale wrapper: classifies ln x. Throws DomainError naming the first
/// nonpositive observation (1-based).
OutlierReport bp_classify_shape_scale(std::span<const double> x, const BpConfig& config);

}  // namespace outlierkit
