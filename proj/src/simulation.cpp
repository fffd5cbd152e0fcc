#include "outlierkit/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <string>

#include "outlierkit/bp.hpp"
#include "outlierkit/errors.hpp"
#include "outlierkit/rng.hpp"
#include "outlierkit/special.hpp"

namespace outlierkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Offset beyond the border of one contaminant, >= 0.
double excess(const ContaminationSpec& spec, ReplicateRng& rng) {
  if (spec.kind == ContaminantKind::TwoParamExponential) return spec.theta * rng.exponential();
  // N(mu, rho) conditioned on being positive, by inversion.
  const double sd = std::sqrt(spec.rho);
  const double p0 = normal_cdf(-spec.mu / sd);
  const double p = p0 + rng.uniform() * (1.0 - p0);
  return std::max(0.0, spec.mu + sd * normal_quantile(std::min(p, 1.0 - 0x1.0p-53)));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string describe(const ContaminationSpec& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s;%s;r=%ld;theta=%.17g;mu=%.17g;rho=%.17g;abar=%.17g",
                c.kind == ContaminantKind::TwoParamExponential ? "exp" : "tn",
                std::string(contamination_side_name(c.side)).c_str(), c.r, c.theta, c.mu, c.rho,
                c.alpha_bar);
  return buf;
}

struct Counts {
  std::uint32_t oo = 0;
  std::uint32_t on = 0;
  std::uint32_t no = 0;
  std::uint32_t nn = 0;
};

double mean_se(double sum, double sumsq, double m) {
  if (m < 2.0) return 0.0;
  const double mean = sum / m;
  const double var = std::max(0.0, (sumsq - m * mean * mean) / (m - 1.0));
  return std::sqrt(var / m);
}

}  // namespace

ContaminationSpec ContaminationSpec::exponential(double theta, ContaminationSide side, long r) {
  ContaminationSpec c;
  c.kind = ContaminantKind::TwoParamExponential;
  c.theta = theta;
  c.side = side;
  c.r = r;
  return c;
}

ContaminationSpec ContaminationSpec::truncated_normal(double mu, double rho, ContaminationSide side,
                                                      long r) {
  ContaminationSpec c;
  c.kind = ContaminantKind::TruncatedNormal;
  c.mu = mu;
  c.rho = rho;
  c.side = side;
  c.r = r;
  return c;
}

double ContaminationSpec::parameter() const {
  return kind == ContaminantKind::TwoParamExponential ? theta : mu;
}

std::string_view contamination_side_name(ContaminationSide side) {
  switch (side) {
    case ContaminationSide::Right: return "right";
    case ContaminationSide::Left: return "left";
    case ContaminationSide::Both: return "both";
  }
  return "?";
}

ContaminationSide contamination_side_by_name(std::string_view name) {
  const auto s = lower(name);
  if (s == "right") return ContaminationSide::Right;
  if (s == "left") return ContaminationSide::Left;
  if (s == "both" || s == "two") return ContaminationSide::Both;
  throw ConfigError("unknown contamination side '" + std::string(name) + "'");
}

std::pair<double, double> contamination_anchors(const Family& f, long n,
                                                const ContaminationSpec& spec) {
  const Side side = spec.side == ContaminationSide::Right  ? Side::Right
                    : spec.side == ContaminationSide::Left ? Side::Left
                                                           : Side::TwoSided;
  const auto region = outlier_region(f, 0.0, 1.0, n, spec.alpha_bar, side);
  return {region.lower, region.upper};
}

Replicate generate_replicate(const Family& f, long n, const ContaminationSpec& spec,
                             std::uint64_t seed, std::uint64_t index) {
  if (n < 2) throw ConfigError("sample size must be at least 2");
  if (spec.r < 0 || spec.r >= n) throw ConfigError("contaminant count r must satisfy 0 <= r < n");
  if (spec.kind == ContaminantKind::TwoParamExponential && !(spec.theta > 0.0)) {
    throw ConfigError("theta must be positive");
  }
  if (spec.kind == ContaminantKind::TruncatedNormal && !(spec.rho > 0.0)) {
    throw ConfigError("rho must be positive");
  }
  ReplicateRng rng(seed, index);
  Replicate rep;
  const auto nn = static_cast<std::size_t>(n);
  const auto r = static_cast<std::size_t>(spec.r);
  rep.x.resize(nn);
  for (std::size_t i = 0; i < nn - r; ++i) rep.x[i] = rng.draw(f);
  if (r == 0) return rep;
  const auto [lo, hi] = contamination_anchors(f, n, spec);
  std::size_t right = 0;
  switch (spec.side) {
    case ContaminationSide::Right: right = r; break;
    case ContaminationSide::Left: right = 0; break;
    case ContaminationSide::Both: right = (r + 1) / 2; break;
  }
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t i = nn - r + k;
    const double e = excess(spec, rng);
    rep.x[i] = k < right ? hi + e : lo - e;
    rep.contaminants.push_back(i);
  }
  return rep;
}

std::string_view method_name(MethodId m) {
  switch (m) {
    case MethodId::Bp: return "bp";
    case MethodId::DgRobust: return "dg-robust";
    case MethodId::DgMl: return "dg-ml";
    case MethodId::Rosner: return "rosner";
    case MethodId::Bolshev: return "bolshev";
    case MethodId::Hawkins: return "hawkins";
  }
  return "?";
}

MethodId method_by_name(std::string_view name) {
  const auto s = lower(name);
  if (s == "bp") return MethodId::Bp;
  if (s == "dg" || s == "dg-robust" || s == "dg_rob") return MethodId::DgRobust;
  if (s == "dg-ml" || s == "dg_ml") return MethodId::DgMl;
  if (s == "rosner") return MethodId::Rosner;
  if (s == "bolshev") return MethodId::Bolshev;
  if (s == "hawkins") return MethodId::Hawkins;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

int effective_s(const MethodSpec& m, long n) {
  if (m.s > 0) return m.s;
  if (m.id == MethodId::Rosner) return static_cast<int>(std::floor(0.4 * static_cast<double>(n)));
  return 5;
}

PreparedClassifier prepare_classifier(const MethodSpec& m, const Family& f, long n) {
  const int s = effective_s(m, n);
  PreparedClassifier p;
  p.label = std::string(method_name(m.id));
  if (m.id == MethodId::Rosner || m.id == MethodId::Bolshev || m.id == MethodId::Hawkins) {
    p.label += "_s" + std::to_string(s);
    if (f.id != FamilyId::Normal) {
      throw ConfigError(std::string(method_name(m.id)) + " is defined for normal data only");
    }
  }
  switch (m.id) {
    case MethodId::Bp: {
      auto cfg = m.bp_exact ? make_exact_bp_config(f, n, m.alpha, m.side, s, m.critical_replicates,
                                                   m.critical_seed)
                            : make_bp_config(f, m.alpha, m.side, s);
      if (static_cast<std::size_t>(s) > static_cast<std::size_t>(n) / 2) {
        throw ConfigError("BP needs s <= n/2");
      }
      p.critical_values = {cfg.critical_value};
      p.classify = [cfg](std::span<const double> x) { return bp_classify(x, cfg); };
      break;
    }
    case MethodId::DgRobust:
    case MethodId::DgMl: {
      const auto e = m.id == MethodId::DgRobust ? Estimator::MedQn : Estimator::MeanSd;
      auto thr = std::make_shared<DgThresholds>(
          dg_thresholds(f, n, m.alpha, e, m.critical_replicates, m.critical_seed));
      p.critical_values = {thr->g_n_alpha, thr->h_n_1_alpha, thr->g_sym, thr->g_half,
                           thr->h_half};
      const Side side = m.side;
      p.classify = [thr, side](std::span<const double> x) { return dg_classify(x, *thr, side); };
      break;
    }
    case MethodId::Rosner: {
      auto cfg = make_rosner_config(n, s, m.alpha, m.side, m.rosner_form, m.critical_replicates,
                                    m.critical_seed);
      p.critical_values = cfg.lambda;
      p.classify = [cfg](std::span<const double> x) { return rosner_classify(x, cfg); };
      break;
    }
    case MethodId::Bolshev: {
      const double c = simulate_baseline_critical(BaselineMethod::Bolshev, n, s, m.alpha, m.side,
                                                  m.critical_replicates, m.critical_seed);
      p.critical_values = {c};
      const double alpha = m.alpha;
      const Side side = m.side;
      p.classify = [=](std::span<const double> x) {
        return bolshev_classify(x, s, alpha, side, c);
      };
      break;
    }
    case MethodId::Hawkins: {
      if (m.side != Side::Right) throw ConfigError("Hawkins searches right outliers only");
      const double c = simulate_baseline_critical(BaselineMethod::Hawkins, n, s, m.alpha,
                                                  Side::Right, m.critical_replicates,
                                                  m.critical_seed);
      p.critical_values = {c};
      const double alpha = m.alpha;
      p.classify = [=](std::span<const double> x) { return hawkins_classify(x, s, alpha, c); };
      break;
    }
  }
  return p;
}

McResult run_experiment(const PreparedClassifier& method, const Family& f, long n,
                        const ContaminationSpec& spec, std::size_t replicates, std::uint64_t seed,
                        Exec exec) {
  if (replicates == 0) throw ConfigError("M must be at least 1");
  // Validates the spec before the loop.
  (void)generate_replicate(f, n, spec, seed, 0);
  const auto counts = map_replicates<Counts>(replicates, exec, [&](std::uint64_t i) {
    const auto rep = generate_replicate(f, n, spec, seed, i);
    const auto report = method.classify(rep.x);
    std::vector<char> contaminant(rep.x.size(), 0);
    for (auto c : rep.contaminants) contaminant[c] = 1;
    Counts k;
    for (auto idx : report.all_outliers()) (contaminant[idx] ? k.oo : k.no) += 1;
    k.on = static_cast<std::uint32_t>(rep.contaminants.size()) - k.oo;
    k.nn = static_cast<std::uint32_t>(rep.x.size() - rep.contaminants.size()) - k.no;
    return k;
  });
  McResult res;
  res.replicates = replicates;
  res.seed = seed;
  res.n = n;
  res.r = spec.r;
  double sq_oo = 0.0, sq_on = 0.0, sq_no = 0.0;
  for (const auto& k : counts) {
    res.total_oo += k.oo;
    res.total_on += k.on;
    res.total_no += k.no;
    res.total_nn += k.nn;
    res.total_rejecting += (k.oo + k.no) > 0 ? 1 : 0;
    sq_oo += double(k.oo) * k.oo;
    sq_on += double(k.on) * k.on;
    sq_no += double(k.no) * k.no;
  }
  const auto m = static_cast<double>(replicates);
  res.d_oo = static_cast<double>(res.total_oo) / m;
  res.d_on = static_cast<double>(res.total_on) / m;
  res.d_no = static_cast<double>(res.total_no) / m;
  res.d_nn = static_cast<double>(res.total_nn) / m;
  res.significance = static_cast<double>(res.total_rejecting) / m;
  res.se_d_oo = mean_se(static_cast<double>(res.total_oo), sq_oo, m);
  res.se_d_on = mean_se(static_cast<double>(res.total_on), sq_on, m);
  res.se_d_no = mean_se(static_cast<double>(res.total_no), sq_no, m);
  res.se_significance = std::sqrt(res.significance * (1.0 - res.significance) / m);
  std::string desc = method.label + ";" + std::string(f.name) + ";n=" + std::to_string(n) + ";" +
                     describe(spec) + ";M=" + std::to_string(replicates) +
                     ";seed=" + std::to_string(seed);
  for (double c : method.critical_values) {
    char buf[32];
    std::snprintf(buf, sizeof buf, ";%.17g", c);
    desc += buf;
  }
  res.fingerprint = hex64(fnv1a(desc));
  return res;
}

McResult run_experiment(const MethodSpec& method, const Family& f, long n,
                        const ContaminationSpec& spec, std::size_t replicates, std::uint64_t seed,
                        Exec exec) {
  return run_experiment(prepare_classifier(method, f, n), f, n, spec, replicates, seed, exec);
}

std::vector<std::pair<long, double>> significance_curve(const MethodSpec& method, const Family& f,
                                                        std::span<const long> n_grid,
                                                        std::size_t replicates,
                                                        std::uint64_t seed, Exec exec) {
  std::vector<std::pair<long, double>> out;
  for (long n : n_grid) {
    const auto res = run_experiment(method, f, n, ContaminationSpec{}, replicates, seed, exec);
    out.emplace_back(n, res.significance);
  }
  return out;
}

}  // namespace outlierkit
