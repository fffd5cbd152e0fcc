#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// Adaptive Simpson integration in long double.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, long double eps, int depth = 40) {
  const auto step = [&](long double lo, long double hi, long double flo, long double fmid,
                        long double fhi) { return (hi - lo) / 6.0L * (flo + 4.0L * fmid + fhi); };
  std::function<long double(long double, long double, long double, long double, long double,
                            long double, long double, int)>
      rec = [&](long double lo, long double hi, long double flo, long double fmid, long double fhi,
                long double whole, long double tol, int d) -> long double {
    const long double mid = 0.5L * (lo + hi);
    const long double lm = 0.5L * (lo + mid);
    const long double rm = 0.5L * (mid + hi);
    const long double flm = f(lm);
    const long double frm = f(rm);
    const long double left = step(lo, mid, flo, flm, fmid);
    const long double right = step(mid, hi, fmid, frm, fhi);
    if (d <= 0 || std::fabs(left + right - whole) <= 15.0L * tol) {
      return left + right + (left + right - whole) / 15.0L;
    }
    return rec(lo, mid, flo, flm, fmid, left, tol / 2.0L, d - 1) +
           rec(mid, hi, fmid, frm, fhi, right, tol / 2.0L, d - 1);
  };
  const long double fa = f(a);
  const long double fb = f(b);
  const long double fm = f(0.5L * (a + b));
  return rec(a, b, fa, fm, fb, step(a, b, fa, fm, fb), eps, depth);
}

/// Chi-square CDF with `df` degrees of freedom by quadrature of the density.
inline long double chi2_cdf(int df, long double x) {
  if (x <= 0.0L) return 0.0L;
  const long double k = df / 2.0L;
  const long double logc = -k * std::log(2.0L) - std::lgamma(k);
  auto dens = [&](long double t) {
    if (t <= 0.0L) return (df == 2) ? 0.5L : 0.0L;
    return std::exp(logc + (k - 1.0L) * std::log(t) - t / 2.0L);
  };
  // Integrate the smaller tail for accuracy.
  const long double mode = std::max(0.0L, static_cast<long double>(df) - 2.0L);
  if (x <= mode + 1.0L) return simpson(dens, 0.0L, x, 1e-18L);
  const long double upper = simpson(dens, x, x + 400.0L + 20.0L * df, 1e-18L);
  return 1.0L - upper;
}

/// erf by its Maclaurin series in long double (accurate for |x| <= 4).
inline long double erf_series(long double x) {
  long double sum = 0.0L;
  long double term = x;
  for (int n = 0; n < 400; ++n) {
    const long double add = term / (2.0L * n + 1.0L);
    sum += add;
    if (std::fabs(add) < 1e-30L * std::fabs(sum)) break;
    term *= -x * x / (n + 1.0L);
  }
  return 2.0L / std::sqrt(3.14159265358979323846264338327950288L) * sum;
}

inline long double normal_cdf(long double x) {
  return 0.5L * (1.0L + erf_series(x / std::sqrt(2.0L)));
}

/// Bisection root of an increasing function on [lo, hi].
inline double bisect(const std::function<double(double)>& g, double target, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// k-th smallest (1-based) of all |x_i - x_j|, i < j, by enumeration.
inline double kth_pair_brute(const std::vector<double>& x, std::size_t k) {
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) d.push_back(std::fabs(x[i] - x[j]));
  }
  std::sort(d.begin(), d.end());
  return d[k - 1];
}

}  // namespace oracle
