#include "outlierkit/bp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "outlierkit/errors.hpp"
#include "outlierkit/estimators.hpp"
#include "outlierkit/rng.hpp"
#include "outlierkit/special.hpp"

namespace outlierkit {

namespace {

void check_rank(long m, int i, std::size_t available) {
  if (i < 1 || static_cast<std::size_t>(i) > available || i > m) {
    throw DomainError("U statistic rank " + std::to_string(i) + " outside the working sample");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

// Constants (b, a) applied to the sorted extremes of one search direction.
struct Scaling {
  double b;
  double a;
};

Scaling scaling(const Family& f, Side direction, long m) {
  switch (direction) {
    case Side::Right: {
      const auto c = normalizing_constants(f, m);
      return {c.b_n, c.a_n};
    }
    case Side::Left: {
      const auto c = normalizing_constants(f, m);
      return {c.b_star_n, c.a_star_n};
    }
    case Side::TwoSided: {
      const auto c = normalizing_constants(f, 2 * m);
      return {c.b_n, c.a_n};
    }
  }
  throw ConfigError("unknown side");
}

// Extremes of one direction: values sorted so that the most outlying comes
// first (z for Right, -z for Left, |z| for the symmetric two-sided search).
struct Ranked {
  std::vector<double> values;
  std::vector<std::size_t> index;
};

Ranked ranked(std::span<const double> z, Side direction) {
  std::vector<double> e(z.begin(), z.end());
  if (direction == Side::Left) {
    for (auto& v : e) v = -v;
  } else if (direction == Side::TwoSided) {
    for (auto& v : e) v = std::fabs(v);
  }
  Ranked r;
  r.index = order_descending(e);
  r.values.reserve(e.size());
  for (auto i : r.index) r.values.push_back(e[i]);
  return r;
}

double step_u(const Ranked& r, std::size_t offset, int i, const Scaling& sc, GammaClass g,
              bool* saturated) {
  return u_from_normalized((r.values[offset + static_cast<std::size_t>(i) - 1] - sc.b) / sc.a, i, g,
                           saturated);
}

double max_step1_u(const Ranked& r, const Family& f, Side direction, int s) {
  const auto n = static_cast<long>(r.values.size());
  const auto sc = scaling(f, direction, n);
  double best = 0.0;
  for (int i = 1; i <= s; ++i) best = std::max(best, step_u(r, 0, i, sc, f.gamma_class, nullptr));
  return best;
}

struct SearchResult {
  std::vector<std::size_t> declared;
  std::vector<BpStepRecord> trail;
  bool cap_hit = false;
};

SearchResult stepwise_search(const Ranked& r, const Family& f, Side direction, int s, double c) {
  SearchResult out;
  const auto n = static_cast<long>(r.values.size());
  const long cap = n / 2;
  long declared = 0;
  for (long l = 1;; ++l) {
    const long m = n - l + 1;
    const auto offset = static_cast<std::size_t>(l - 1);
    const auto sc = scaling(f, direction, m);
    BpStepRecord rec;
    rec.side = direction;
    rec.step_index = static_cast<int>(l);
    rec.sample_size_used = m;
    rec.u_values.reserve(static_cast<std::size_t>(s));
    int d = 0;
    for (int i = 1; i <= s; ++i) {
      bool sat = false;
      const double u = step_u(r, offset, i, sc, f.gamma_class, &sat);
      rec.saturated = rec.saturated || sat;
      rec.u_values.push_back(u);
      if (u > c) d = i;
    }
    rec.d_l = d;
    if (d < s) {
      declared = l - 1 + d;
      out.trail.push_back(std::move(rec));
      break;
    }
    rec.rejected_this_step = r.index[offset];
    out.trail.push_back(std::move(rec));
    if (l == cap) {
      declared = l;
      out.cap_hit = true;
      break;
    }
  }
  out.declared.assign(r.index.begin(), r.index.begin() + declared);
  return out;
}

void validate(std::span<const double> x, const BpConfig& config) {
  if (x.size() < 2) throw DomainError("BP needs at least 2 observations");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw DomainError("observation " + std::to_string(i + 1) + " is not finite");
    }
  }
  if (config.s < 1) throw ConfigError("s must be at least 1");
  if (static_cast<std::size_t>(config.s) > x.size() / 2) {
    throw ConfigError("s = " + std::to_string(config.s) + " exceeds n/2 = " +
                      std::to_string(x.size() / 2));
  }
  if (!(config.critical_value > 0.0 && config.critical_value < 1.0)) {
    throw ConfigError("BP critical value must lie in (0, 1)");
  }
}

bool symmetric_two_sided(const Family& f, Side side) { return side == Side::TwoSided && f.symmetric; }

// Frozen output of simulate_critical_value_v(5, alpha, 10^6, kDefaultCriticalSeed).
constexpr std::pair<double, double> kFrozenV5[] = {
    {0.1, 0.96758996535992414},
    {0.05, 0.98523593417571731},
    {0.025, 0.99313177543650066},
    {0.01, 0.99747477706761223},
    {0.005, 0.99878464564599856},
};

}  // namespace

double u_from_normalized(double w, int rank, GammaClass g, bool* saturated) {
  if (rank < 1) throw DomainError("U statistic rank must be at least 1");
  if (std::isnan(w)) throw DomainError("U statistic of NaN");
  double arg;
  if (g == GammaClass::Gumbel) {
    arg = 2.0 * std::exp(-w);
  } else if (1.0 + w <= 0.0) {
    if (saturated) *saturated = true;
    return 0.0;
  } else {
    arg = 2.0 / (1.0 + w);
  }
  return chi2_even_sf(rank, arg);
}

double u_statistic_right(std::span<const double> z_desc, long m, int i, const Family& f) {
  check_rank(m, i, z_desc.size());
  const auto c = normalizing_constants(f, m);
  return u_from_normalized((z_desc[static_cast<std::size_t>(i) - 1] - c.b_n) / c.a_n, i,
                           f.gamma_class);
}

double u_statistic_left(std::span<const double> z_asc, long m, int i, const Family& f) {
  check_rank(m, i, z_asc.size());
  const auto c = normalizing_constants(f, m);
  return u_from_normalized((-z_asc[static_cast<std::size_t>(i) - 1] - c.b_star_n) / c.a_star_n, i,
                           f.gamma_class);
}

double u_statistic_twosided_symmetric(std::span<const double> abs_z_desc, long m, int i,
                                      const Family& f) {
  if (!f.symmetric) {
    throw ConfigError("the |z| statistic requires a symmetric family; " + std::string(f.name) +
                      " is not");
  }
  check_rank(m, i, abs_z_desc.size());
  const auto c = normalizing_constants(f, 2 * m);
  return u_from_normalized((abs_z_desc[static_cast<std::size_t>(i) - 1] - c.b_n) / c.a_n, i,
                           f.gamma_class);
}

double simulate_critical_value_v(int s, double alpha, std::size_t replicates, std::uint64_t seed,
                                 Exec exec, double* standard_error) {
  if (s < 1) throw ConfigError("s must be at least 1");
  check_alpha(alpha);
  if (replicates == 0) throw ConfigError("replicates must be positive");
  auto v = map_replicates<double>(replicates, exec, [&](std::uint64_t rep) {
    ReplicateRng rng(seed, rep);
    double sum = 0.0;
    double best = 0.0;
    for (int i = 1; i <= s; ++i) {
      sum += rng.exponential();
      best = std::max(best, chi2_even_sf(i, 2.0 * sum));
    }
    return best;
  });
  if (standard_error) {
    const auto q = empirical_quantile_se(v, 1.0 - alpha);
    *standard_error = q.standard_error;
    return q.value;
  }
  return empirical_quantile(v, 1.0 - alpha);
}

bool has_builtin_critical_value(int s, double alpha) {
  if (s != 5) return false;
  for (const auto& entry : kFrozenV5) {
    if (entry.first == alpha) return true;
  }
  return false;
}

double asymptotic_critical_value(int s, double alpha) {
  if (s < 1) throw ConfigError("s must be at least 1");
  check_alpha(alpha);
  if (s == 5) {
    for (const auto& [a, v] : kFrozenV5) {
      if (a == alpha) return v;
    }
  }
  static std::mutex mu;
  static std::map<std::pair<int, double>, double> memo;
  std::lock_guard lock(mu);
  const auto key = std::make_pair(s, alpha);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  const double v =
      simulate_critical_value_v(s, alpha, kDefaultAsymptoticReplicates, kDefaultCriticalSeed);
  memo.emplace(key, v);
  return v;
}

double bp_statistic(std::span<const double> x, const Family& f, Side side, int s) {
  if (x.size() < 2) throw DomainError("BP needs at least 2 observations");
  if (s < 1 || static_cast<std::size_t>(s) > x.size()) throw ConfigError("s outside [1, n]");
  const auto z = z_scores(x, robust_fit(x, f));
  if (side == Side::TwoSided && !f.symmetric) {
    return std::max(max_step1_u(ranked(z, Side::Right), f, Side::Right, s),
                    max_step1_u(ranked(z, Side::Left), f, Side::Left, s));
  }
  return max_step1_u(ranked(z, side), f, side, s);
}

double simulate_exact_critical_value_u(const Family& f, long n, int s, double alpha, Side side,
                                       std::size_t replicates, std::uint64_t seed, Exec exec,
                                       double* standard_error) {
  check_alpha(alpha);
  if (n < 2) throw DomainError("n must be at least 2");
  if (replicates == 0) throw ConfigError("replicates must be positive");
  auto u = map_replicates<double>(replicates, exec, [&](std::uint64_t rep) {
    ReplicateRng rng(seed, rep);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.draw(f);
    return bp_statistic(x, f, side, s);
  });
  if (standard_error) {
    const auto q = empirical_quantile_se(u, 1.0 - alpha);
    *standard_error = q.standard_error;
    return q.value;
  }
  return empirical_quantile(u, 1.0 - alpha);
}

BpConfig make_bp_config(const Family& f, double alpha, Side side, int s) {
  check_alpha(alpha);
  BpConfig c;
  c.family = f;
  c.alpha = alpha;
  c.side = side;
  c.s = s;
  const double level = (side == Side::TwoSided && !f.symmetric) ? alpha / 2.0 : alpha;
  c.critical_value = asymptotic_critical_value(s, level);
  return c;
}

BpConfig make_exact_bp_config(const Family& f, long n, double alpha, Side side, int s,
                              std::size_t replicates, std::uint64_t seed) {
  BpConfig c;
  c.family = f;
  c.alpha = alpha;
  c.side = side;
  c.s = s;
  c.use_exact_critical = true;
  c.critical_value = simulate_exact_critical_value_u(f, n, s, alpha, side, replicates, seed);
  return c;
}

OutlierReport bp_classify(std::span<const double> x, const BpConfig& config) {
  validate(x, config);
  const Family& f = config.family;
  OutlierReport rep;
  rep.method = "bp";
  rep.config_echo = config;
  rep.fit = robust_fit(x, f);
  const auto z = z_scores(x, rep.fit);
  const double c = config.critical_value;
  rep.critical_values = {c};

  auto absorb = [&](SearchResult&& res) {
    rep.rejection_cap_hit = rep.rejection_cap_hit || res.cap_hit;
    for (auto& t : res.trail) rep.trail.push_back(std::move(t));
    return std::move(res.declared);
  };

  if (symmetric_two_sided(f, config.side) || config.side != Side::TwoSided) {
    const Side dir = config.side;
    const auto r = ranked(z, dir);
    const auto declared = absorb(stepwise_search(r, f, dir, config.s, c));
    for (auto i : declared) {
      const bool right = dir == Side::Right || (dir == Side::TwoSided && z[i] >= 0.0);
      (right ? rep.outlier_indices_right : rep.outlier_indices_left).push_back(i);
    }
  } else {
    const auto right = absorb(stepwise_search(ranked(z, Side::Right), f, Side::Right, config.s, c));
    const auto left = absorb(stepwise_search(ranked(z, Side::Left), f, Side::Left, config.s, c));
    // An observation claimed by both searches belongs to the side of its sign.
    for (auto i : right) {
      if (z[i] >= 0.0 || std::find(left.begin(), left.end(), i) == left.end()) {
        rep.outlier_indices_right.push_back(i);
      }
    }
    for (auto i : left) {
      if (z[i] < 0.0 || std::find(right.begin(), right.end(), i) == right.end()) {
        rep.outlier_indices_left.push_back(i);
      }
    }
  }
  for (const auto& t : rep.trail) {
    if (t.step_index == 1) rep.statistics.insert(rep.statistics.end(), t.u_values.begin(), t.u_values.end());
  }
  rep.decision = rep.outlier_count() > 0 ? Decision::OutliersFound : Decision::NoOutliers;
  return rep;
}

OutlierReport bp_classify_shape_scale(std::span<const double> x, const BpConfig& config) {
  std::vector<double> logs;
  logs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      throw DomainError("shape-scale data must be positive; observation " + std::to_string(i + 1) +
                        " is " + std::to_string(x[i]));
    }
    logs.push_back(std::log(x[i]));
  }
  auto rep = bp_classify(logs, config);
  rep.method = "bp-shape-scale";
  return rep;
}

}  // namespace outlierkit
