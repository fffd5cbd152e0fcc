#include "outlierkit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "outlierkit/errors.hpp"

namespace outlierkit {

std::string_view estimator_name(Estimator e) { return e == Estimator::MedQn ? "robust" : "ml"; }

Estimator estimator_by_name(std::string_view name) {
  if (name == "robust" || name == "medqn" || name == "rob") return Estimator::MedQn;
  if (name == "ml" || name == "meansd" || name == "mean-sd") return Estimator::MeanSd;
  throw DomainError("unknown estimator '" + std::string(name) + "'");
}

double median(std::span<const double> x) {
  if (x.empty()) throw DomainError("median of an empty sample");
  std::vector<double> v(x.begin(), x.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::size_t qn_rank(std::size_t n) {
  const std::size_t h = n / 2 + 1;
  return h * (h - 1) / 2;
}

double kth_pairwise_difference(std::span<const double> y, std::size_t k) {
  const std::size_t n = y.size();
  if (n < 2) throw DomainError("pairwise differences need n >= 2");
  const std::size_t total = n * (n - 1) / 2;
  if (k < 1 || k > total) throw DomainError("pairwise difference rank out of range");

  // Candidate columns of row i are [lo[i], hi[i]); everything left of lo is
  // known to be below the answer, everything from hi on above it.
  std::vector<std::size_t> lo(n), hi(n, n), less(n), less_eq(n);
  for (std::size_t i = 0; i < n; ++i) lo[i] = i + 1;
  std::size_t below = 0;
  std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ (n * 0xbf58476d1ce4e5b9ULL) ^ k;

  std::vector<double> pool;
  for (;;) {
    std::size_t candidates = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) candidates += hi[i] - lo[i];

    if (candidates <= std::max<std::size_t>(n, 64)) {
      pool.clear();
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = lo[i]; j < hi[i]; ++j) pool.push_back(y[j] - y[i]);
      const auto nth = pool.begin() + static_cast<std::ptrdiff_t>(k - below - 1);
      std::nth_element(pool.begin(), nth, pool.end());
      return *nth;
    }

    // splitmix64 step for the pivot position.
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    std::size_t pick = static_cast<std::size_t>(z % candidates);
    double pivot = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t width = hi[i] - lo[i];
      if (pick < width) {
        pivot = y[lo[i] + pick] - y[i];
        break;
      }
      pick -= width;
    }

    std::size_t count_less = 0, count_less_eq = 0;
    std::size_t p_less = 1, p_less_eq = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      p_less = std::max(p_less, i + 1);
      while (p_less < n && y[p_less] - y[i] < pivot) ++p_less;
      p_less_eq = std::max(p_less_eq, p_less);
      while (p_less_eq < n && y[p_less_eq] - y[i] <= pivot) ++p_less_eq;
      less[i] = p_less;
      less_eq[i] = p_less_eq;
      count_less += p_less - (i + 1);
      count_less_eq += p_less_eq - (i + 1);
    }

    if (k <= count_less) {
      for (std::size_t i = 0; i + 1 < n; ++i) hi[i] = std::min(hi[i], less[i]);
    } else if (k > count_less_eq) {
      below = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        lo[i] = std::max(lo[i], less_eq[i]);
        below += lo[i] - (i + 1);
      }
    } else {
      return pivot;
    }
  }
}

double qn_scale(std::span<const double> x, const Family& f) {
  if (x.size() < 2) throw DomainError("Qn needs at least two observations");
  std::vector<double> y(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double w = kth_pairwise_difference(y, qn_rank(y.size()));
  if (!(w > 0.0)) throw DegenerateScaleError("Qn scale is zero (too many tied values)");
  return f.d * w;
}

RobustFit robust_fit(std::span<const double> x, const Family& f) {
  const double sigma = qn_scale(x, f);
  const double med = median(x);
  const double mu = f.symmetric ? med : med - sigma * quantile(f, 0.5);
  return {mu, sigma, Estimator::MedQn};
}

RobustFit mean_sd_fit(std::span<const double> x) {
  if (x.size() < 2) throw DomainError("mean/sd fit needs at least two observations");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw DegenerateScaleError("sample standard deviation is zero");
  return {mean, sd, Estimator::MeanSd};
}

RobustFit fit(std::span<const double> x, const Family& f, Estimator e) {
  return e == Estimator::MedQn ? robust_fit(x, f) : mean_sd_fit(x);
}

std::vector<double> z_scores(std::span<const double> x, const RobustFit& fit) {
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - fit.mu_hat) / fit.sigma_hat;
  return z;
}

std::vector<std::size_t> order_descending(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return idx;
}

std::vector<std::size_t> order_ascending(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return idx;
}

}  // namespace outlierkit
