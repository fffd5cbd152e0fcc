#include "outlierkit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "outlierkit/errors.hpp"
#include "outlierkit/rng.hpp"
#include "outlierkit/special.hpp"

namespace outlierkit {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

void check_finite(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw DomainError("observation " + std::to_string(i + 1) + " is not finite");
    }
  }
}

void check_s(std::span<const double> x, int s) {
  if (s < 1) throw ConfigError("s must be at least 1");
  if (static_cast<std::size_t>(s) >= x.size()) {
    throw ConfigError("s = " + std::to_string(s) + " must be below n = " + std::to_string(x.size()));
  }
}

void finish(OutlierReport& rep) {
  rep.decision = rep.outlier_count() > 0 ? Decision::OutliersFound : Decision::NoOutliers;
}

void assign_by_sign(OutlierReport& rep, std::size_t i, double z, Side side) {
  const bool right = side == Side::Right || (side == Side::TwoSided && z >= 0.0);
  (right ? rep.outlier_indices_right : rep.outlier_indices_left).push_back(i);
}

struct Extremes {
  double max_z;
  double min_z;
  double max_abs;
};

// Upper tail P{Y > y} of the studentized residual of a normal sample.
double studentized_residual_sf(long n, double y) { return studentized_residual_cdf(n, -y); }

}  // namespace

// ---------------------------------------------------------------- Davies-Gather

DgThresholds dg_thresholds(const Family& f, long n, double alpha, Estimator e,
                           std::size_t replicates, std::uint64_t seed, Exec exec) {
  if (n < 2) throw ConfigError("Davies-Gather thresholds need n >= 2");
  if (replicates == 0) throw ConfigError("replicates must be positive");
  check_alpha(alpha);
  const auto ext = map_replicates<Extremes>(replicates, exec, [&](std::uint64_t rep) {
    ReplicateRng rng(seed, rep);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.draw(f);
    const auto z = z_scores(x, fit(x, f, e));
    const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
    return Extremes{*hi, *lo, std::max(*hi, -*lo)};
  });
  std::vector<double> mx(replicates), mn(replicates), ab(replicates);
  for (std::size_t i = 0; i < replicates; ++i) {
    mx[i] = ext[i].max_z;
    mn[i] = ext[i].min_z;
    ab[i] = ext[i].max_abs;
  }
  DgThresholds t;
  t.n = n;
  t.alpha = alpha;
  t.family = f;
  t.estimator = e;
  t.g_n_alpha = empirical_quantile(mx, 1.0 - alpha);
  t.g_half = empirical_quantile(mx, 1.0 - alpha / 2.0);
  t.h_n_1_alpha = empirical_quantile(mn, alpha);
  t.h_half = empirical_quantile(mn, alpha / 2.0);
  const auto g = empirical_quantile_se(ab, 1.0 - alpha);
  t.g_sym = g.value;
  t.g_sym_se = g.standard_error;
  return t;
}

OutlierReport dg_classify(std::span<const double> x, const DgThresholds& thr, Side side) {
  if (static_cast<long>(x.size()) != thr.n) {
    throw ConfigError("Davies-Gather thresholds were simulated for n = " + std::to_string(thr.n) +
                      ", sample has n = " + std::to_string(x.size()));
  }
  check_finite(x);
  OutlierReport rep;
  rep.method = thr.estimator == Estimator::MedQn ? "dg-robust" : "dg-ml";
  rep.fit = fit(x, thr.family, thr.estimator);
  const auto z = z_scores(x, rep.fit);
  double lower = -INFINITY;
  double upper = INFINITY;
  bool absolute = false;
  switch (side) {
    case Side::Right:
      upper = thr.g_n_alpha;
      break;
    case Side::Left:
      lower = thr.h_n_1_alpha;
      break;
    case Side::TwoSided:
      if (thr.family.symmetric) {
        absolute = true;
        upper = thr.g_sym;
        lower = -thr.g_sym;
      } else {
        upper = thr.g_half;
        lower = thr.h_half;
      }
      break;
  }
  rep.critical_values = {lower, upper};
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  rep.statistics = absolute ? std::vector<double>{std::max(*hi, -*lo)}
                            : std::vector<double>{*lo, *hi};
  for (auto i : order_descending(z)) {
    if (z[i] > upper) rep.outlier_indices_right.push_back(i);
  }
  for (auto i : order_ascending(z)) {
    if (z[i] < lower) rep.outlier_indices_left.push_back(i);
  }
  finish(rep);
  return rep;
}

DgThresholds dg_thresholds_from_table(const CriticalValueTable& table, const Family& f,
                                      Estimator e, long n, double alpha) {
  auto get = [&](std::string_view field) {
    const auto v = table.value(dg_key(field, f, e, n, alpha));
    if (!v) {
      throw MissingCriticalValueError(
          "no Davies-Gather threshold " + std::string(field) + " for family " +
          std::string(f.name) + ", n=" + std::to_string(n) +
          "; generate it with `outlierkit simulate-critical --method dg`");
    }
    return *v;
  };
  DgThresholds t;
  t.n = n;
  t.alpha = alpha;
  t.family = f;
  t.estimator = e;
  t.g_n_alpha = get("g_n_alpha");
  t.h_n_1_alpha = get("h_n_1_alpha");
  t.g_sym = get("g_sym");
  t.g_half = get("g_half");
  t.h_half = get("h_half");
  return t;
}

void dg_thresholds_to_table(CriticalValueTable& table, const DgThresholds& thr,
                            std::uint64_t replicates, std::uint64_t seed) {
  const std::pair<std::string_view, double> fields[] = {{"g_n_alpha", thr.g_n_alpha},
                                                        {"h_n_1_alpha", thr.h_n_1_alpha},
                                                        {"g_sym", thr.g_sym},
                                                        {"g_half", thr.g_half},
                                                        {"h_half", thr.h_half}};
  for (const auto& [name, v] : fields) {
    table.put(dg_key(name, thr.family, thr.estimator, thr.n, thr.alpha),
              make_entry(v, replicates, seed));
  }
}

// ---------------------------------------------------------------- Rosner

std::vector<double> rosner_lambdas(long n, int s, double alpha, Side side, RosnerLambdaForm form) {
  check_alpha(alpha);
  if (s < 1 || s >= n - 2) {
    throw ConfigError("Rosner needs 1 <= s < n - 2 (s = " + std::to_string(s) +
                      ", n = " + std::to_string(n) + ")");
  }
  const double sides = side == Side::TwoSided ? 2.0 : 1.0;
  std::vector<double> lambda;
  lambda.reserve(static_cast<std::size_t>(s));
  for (int i = 1; i <= s; ++i) {
    const double m = static_cast<double>(n - i);  // n - i
    double l;
    if (form == RosnerLambdaForm::Printed) {
      const double t = student_t_upper_critical(m + 1.0, alpha / (sides * (m - 1.0)));
      l = t * std::sqrt(m / (m - 1.0 + t * t)) * std::sqrt(1.0 - 1.0 / (m + 1.0));
    } else {
      const double t = student_t_upper_critical(m - 1.0, alpha / (sides * (m + 1.0)));
      l = m * t / std::sqrt((m - 1.0 + t * t) * (m + 1.0));
    }
    lambda.push_back(l);
  }
  return lambda;
}

RosnerTrail rosner_statistics(std::span<const double> x, int s, Side side) {
  const auto n = x.size();
  RosnerTrail out;
  out.r.assign(static_cast<std::size_t>(s), 0.0);
  // The remaining sample is always a contiguous run [lo, hi] of the sorted
  // values, so the most distant point is at one of the two ends.
  const auto order = order_ascending(x);
  std::vector<double> v(n);
  std::vector<std::size_t> id(order);
  for (std::size_t k = 0; k < n; ++k) v[k] = x[order[k]];
  std::size_t lo = 0;
  std::size_t hi = n - 1;
  for (int i = 0; i < s; ++i) {
    const double m = static_cast<double>(hi - lo + 1);
    double mean = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) mean += v[k];
    mean /= m;
    double ss = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) ss += (v[k] - mean) * (v[k] - mean);
    if (!(ss > 0.0) || m < 3.0) break;
    const double sd = std::sqrt(ss / (m - 1.0));
    // Among equal values at an end, the lowest original index goes first.
    std::size_t best_hi = hi;
    for (std::size_t k = hi; k > lo && v[k - 1] == v[hi]; --k) {
      if (id[k - 1] < id[best_hi]) best_hi = k - 1;
    }
    std::swap(id[best_hi], id[hi]);
    std::size_t best_lo = lo;
    for (std::size_t k = lo; k < hi && v[k + 1] == v[lo]; ++k) {
      if (id[k + 1] < id[best_lo]) best_lo = k + 1;
    }
    std::swap(id[best_lo], id[lo]);
    const double up = (v[hi] - mean) / sd;
    const double down = (mean - v[lo]) / sd;
    bool take_hi;
    if (side == Side::Right) {
      take_hi = true;
    } else if (side == Side::Left) {
      take_hi = false;
    } else {
      take_hi = up > down || (up == down && id[hi] < id[lo]);
    }
    out.r[static_cast<std::size_t>(i)] = take_hi ? up : down;
    out.removed.push_back(take_hi ? id[hi] : id[lo]);
    take_hi ? --hi : ++lo;
  }
  return out;
}

std::vector<double> rosner_simulated_lambdas(long n, int s, double alpha, Side side,
                                             std::size_t replicates, std::uint64_t seed,
                                             Exec exec) {
  check_alpha(alpha);
  if (s < 1 || s >= n - 2) throw ConfigError("Rosner needs 1 <= s < n - 2");
  if (replicates == 0) throw ConfigError("replicates must be positive");
  const auto& normal = family(FamilyId::Normal);
  const auto rows = map_replicates<std::vector<double>>(replicates, exec, [&](std::uint64_t rep) {
    ReplicateRng rng(seed, rep);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.draw(normal);
    return rosner_statistics(x, s, side).r;
  });
  const auto S = static_cast<std::size_t>(s);
  std::vector<std::vector<double>> cols(S, std::vector<double>(replicates));
  for (std::size_t r = 0; r < replicates; ++r) {
    for (std::size_t i = 0; i < S; ++i) cols[i][r] = rows[r][i];
  }
  for (auto& c : cols) std::sort(c.begin(), c.end());
  const auto R = static_cast<double>(replicates);
  auto lambdas_at = [&](double p) {
    std::vector<double> l(S);
    for (std::size_t i = 0; i < S; ++i) {
      auto k = static_cast<std::size_t>(std::ceil((1.0 - p) * R - 1e-9));
      k = std::clamp<std::size_t>(k, 1, replicates);
      l[i] = cols[i][k - 1];
    }
    return l;
  };
  auto familywise = [&](const std::vector<double>& l) {
    std::size_t hits = 0;
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < S; ++i) {
        if (row[i] > l[i]) {
          ++hits;
          break;
        }
      }
    }
    return static_cast<double>(hits) / R;
  };
  double lo = 0.0;
  double hi = alpha;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (familywise(lambdas_at(mid)) > alpha ? hi : lo) = mid;
  }
  return lambdas_at(lo);
}

RosnerConfig make_rosner_config(long n, int s, double alpha, Side side, RosnerLambdaForm form,
                                std::size_t replicates, std::uint64_t seed) {
  RosnerConfig c;
  c.s = s;
  c.alpha = alpha;
  c.side = side;
  if (n > 25) {
    c.lambda = rosner_lambdas(n, s, alpha, side, form);
  } else {
    c.lambda = rosner_simulated_lambdas(n, s, alpha, side, replicates, seed);
    c.simulated = true;
  }
  return c;
}

OutlierReport rosner_classify(std::span<const double> x, const RosnerConfig& config) {
  check_finite(x);
  if (static_cast<long>(x.size()) <= config.s + 2) {
    throw ConfigError("Rosner needs n > s + 2");
  }
  if (config.lambda.size() != static_cast<std::size_t>(config.s)) {
    throw ConfigError("Rosner config needs one lambda per step");
  }
  OutlierReport rep;
  rep.method = "rosner";
  rep.fit = mean_sd_fit(x);
  const auto trail = rosner_statistics(x, config.s, config.side);
  rep.statistics = trail.r;
  rep.critical_values = config.lambda;
  std::size_t count = 0;
  for (std::size_t i = 0; i < trail.r.size(); ++i) {
    if (trail.r[i] > config.lambda[i]) count = i + 1;
  }
  for (std::size_t k = 0; k < count; ++k) {
    const auto idx = trail.removed[k];
    assign_by_sign(rep, idx, x[idx] - rep.fit.mu_hat, config.side);
  }
  finish(rep);
  return rep;
}

// ---------------------------------------------------------------- Bolshev / Hawkins

double thompson_cdf(double nu, double x) {
  if (!(nu >= 1.0)) throw DomainError("Thompson distribution needs nu >= 1");
  if (std::isnan(x)) throw DomainError("Thompson CDF of NaN");
  const double edge = std::sqrt(nu + 1.0);
  if (x >= edge) return 1.0;
  if (x <= -edge) return 0.0;
  return student_t_cdf(nu, x * std::sqrt(nu / (nu + 1.0 - x * x)));
}

double studentized_residual_cdf(long n, double y) {
  if (n < 3) throw DomainError("studentized residual law needs n >= 3");
  const double nd = static_cast<double>(n);
  return thompson_cdf(nd - 2.0, y * std::sqrt(nd / (nd - 1.0)));
}

BolshevStat bolshev_statistic(std::span<const double> x, int s, Side side) {
  check_finite(x);
  check_s(x, s);
  if (side == Side::Left) throw ConfigError("Bolshev supports right and two-sided search");
  const auto n = static_cast<long>(x.size());
  const auto z = z_scores(x, mean_sd_fit(x));
  BolshevStat st;
  st.tau_values.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double y = side == Side::TwoSided ? std::fabs(z[i]) : z[i];
    st.tau_values[i] = static_cast<double>(n) * studentized_residual_sf(n, y);
  }
  auto sorted = st.tau_values;
  std::partial_sort(sorted.begin(), sorted.begin() + s, sorted.end());
  st.tau_min_ratio = INFINITY;
  for (int i = 1; i <= s; ++i) {
    st.tau_min_ratio = std::min(st.tau_min_ratio, sorted[static_cast<std::size_t>(i) - 1] / i);
  }
  return st;
}

HawkinsStat hawkins_statistic(std::span<const double> x, int s) {
  check_finite(x);
  check_s(x, s);
  const auto n = static_cast<double>(x.size());
  auto z = z_scores(x, mean_sd_fit(x));
  std::partial_sort(z.begin(), z.begin() + s, z.end(), std::greater<>());
  HawkinsStat st;
  double sum = 0.0;
  st.b_max = -INFINITY;
  for (int k = 1; k <= s; ++k) {
    sum += z[static_cast<std::size_t>(k) - 1];
    const double b = sum / std::sqrt(k * (n - k));
    st.b_values.push_back(b);
    st.b_max = std::max(st.b_max, b);
  }
  return st;
}

OutlierReport bolshev_classify(std::span<const double> x, int s, double alpha, Side side,
                               double critical) {
  check_alpha(alpha);
  auto st = bolshev_statistic(x, s, side);
  st.critical = critical;
  OutlierReport rep;
  rep.method = "bolshev";
  rep.fit = mean_sd_fit(x);
  rep.critical_values = {critical};
  const auto order = order_ascending(st.tau_values);
  for (int i = 1; i <= s; ++i) {
    rep.statistics.push_back(st.tau_values[order[static_cast<std::size_t>(i) - 1]] / i);
  }
  if (st.tau_min_ratio < critical) {
    for (int i = 1; i <= s; ++i) {
      const auto idx = order[static_cast<std::size_t>(i) - 1];
      if (st.tau_values[idx] / i < critical) assign_by_sign(rep, idx, x[idx] - rep.fit.mu_hat, side);
    }
  }
  finish(rep);
  return rep;
}

OutlierReport bolshev_classify(std::span<const double> x, int s, double alpha, Side side,
                               const CriticalValueTable& table) {
  const auto n = static_cast<long>(x.size());
  const auto v = table.value(bolshev_key(n, s, alpha, side));
  if (!v) {
    throw MissingCriticalValueError(
        "no Bolshev critical value for n=" + std::to_string(n) + ", s=" + std::to_string(s) +
        "; generate it with `outlierkit simulate-critical --method bolshev`");
  }
  return bolshev_classify(x, s, alpha, side, *v);
}

OutlierReport hawkins_classify(std::span<const double> x, int s, double alpha, double critical) {
  check_alpha(alpha);
  auto st = hawkins_statistic(x, s);
  st.critical = critical;
  OutlierReport rep;
  rep.method = "hawkins";
  rep.fit = mean_sd_fit(x);
  rep.statistics = st.b_values;
  rep.critical_values = {critical};
  if (st.b_max > critical) {
    const auto order = order_descending(x);
    for (int i = 1; i <= s; ++i) {
      if (st.b_values[static_cast<std::size_t>(i) - 1] > critical) {
        rep.outlier_indices_right.push_back(order[static_cast<std::size_t>(i) - 1]);
      }
    }
  }
  finish(rep);
  return rep;
}

OutlierReport hawkins_classify(std::span<const double> x, int s, double alpha,
                               const CriticalValueTable& table) {
  const auto n = static_cast<long>(x.size());
  const auto v = table.value(hawkins_key(n, s, alpha));
  if (!v) {
    throw MissingCriticalValueError(
        "no Hawkins critical value for n=" + std::to_string(n) + ", s=" + std::to_string(s) +
        "; generate it with `outlierkit simulate-critical --method hawkins`");
  }
  return hawkins_classify(x, s, alpha, *v);
}

double simulate_baseline_critical(BaselineMethod method, long n, int s, double alpha, Side side,
                                  std::size_t replicates, std::uint64_t seed, Exec exec,
                                  double* standard_error) {
  check_alpha(alpha);
  if (replicates == 0) throw ConfigError("replicates must be positive");
  if (n < 3) throw ConfigError("baseline critical values need n >= 3");
  const auto& normal = family(FamilyId::Normal);
  auto stat = map_replicates<double>(replicates, exec, [&](std::uint64_t rep) {
    ReplicateRng rng(seed, rep);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.draw(normal);
    return method == BaselineMethod::Bolshev ? bolshev_statistic(x, s, side).tau_min_ratio
                                             : hawkins_statistic(x, s).b_max;
  });
  const double prob = method == BaselineMethod::Bolshev ? alpha : 1.0 - alpha;
  const auto q = empirical_quantile_se(stat, prob);
  if (standard_error) *standard_error = q.standard_error;
  return q.value;
}

}  // namespace outlierkit
