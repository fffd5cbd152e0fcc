#include "outlierkit/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "outlierkit/baselines.hpp"
#include "outlierkit/bp.hpp"
#include "outlierkit/cli/cache.hpp"
#include "outlierkit/cli/csv.hpp"
#include "outlierkit/cli/report.hpp"
#include "outlierkit/errors.hpp"
#include "outlierkit/simulation.hpp"

namespace outlierkit::cli {

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20240917;
constexpr std::size_t kDefaultReplicates = 100'000;

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Everything the detect command needs, validated together.
struct DetectOptions {
  std::string method = "bp";
  std::string family = "normal";
  std::string side;
  double alpha = 0.05;
  int s = 0;
  std::string estimator = "robust";
  std::string input;
  std::string column;
  std::string output;
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t replicates = kDefaultReplicates;
  std::string cache;
  bool force = false;
  bool shape_scale = false;
  bool exact = false;
};

struct SimulateOptions {
  std::string method = "bp";
  std::string family = "normal";
  std::string side;
  std::string estimator = "robust";
  long n = 0;
  int s = 5;
  std::vector<double> alphas{0.05};
  std::size_t replicates = kDefaultReplicates;
  std::uint64_t seed = kDefaultSeed;
  std::string cache;
};

struct ExperimentOptions {
  std::vector<std::string> methods{"bp"};
  std::string family = "normal";
  std::vector<long> n{50};
  std::vector<long> r{5};
  std::vector<double> params{1.0};
  std::string contaminant = "exp";
  std::string contam_side = "both";
  double rho = 0.01;
  std::string side;
  double alpha = 0.05;
  int s = 0;
  std::size_t replicates = 10'000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t critical_replicates = kDefaultReplicates;
  std::uint64_t critical_seed = kDefaultSeed;
  std::string output;
};

// Side default: right for Hawkins, two-sided otherwise.
Side resolve_side(const std::string& side, MethodId m) {
  if (side.empty()) return m == MethodId::Hawkins ? Side::Right : Side::TwoSided;
  return side_by_name(side);
}

MethodId resolve_method(const std::string& name, const std::string& estimator) {
  const auto m = method_by_name(name);
  if (m == MethodId::DgRobust && estimator == "ml") return MethodId::DgMl;
  return m;
}

// Collects every validation problem before failing, so one run reports all.
class Problems {
 public:
  template <class Fn>
  void check(Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      list_.push_back(e.what());
    }
  }
  void add(std::string msg) { list_.push_back(std::move(msg)); }
  void raise() const {
    if (!list_.empty()) throw ConfigError(join(list_, "; "));
  }

 private:
  std::vector<std::string> list_;
};

void validate_method_side(Problems& p, MethodId m, const Family& f, Side side) {
  const bool normal_only = m == MethodId::Rosner || m == MethodId::Bolshev || m == MethodId::Hawkins;
  if (normal_only && f.id != FamilyId::Normal) {
    p.add(std::string(method_name(m)) + " is defined for normal data only");
  }
  if (m == MethodId::Hawkins && side != Side::Right) p.add("hawkins searches right outliers only");
  if (m == MethodId::Bolshev && side == Side::Left) p.add("bolshev supports sides right and two");
}

struct CacheSession {
  std::filesystem::path path;
  CriticalValueTable table;
  std::string fingerprint_before;
  bool dirty = false;
  ordered_json used = ordered_json::array();

  std::optional<double> lookup(const CriticalKey& k) {
    const auto* e = table.find(k);
    if (!e) return std::nullopt;
    note(k, e->value, "cache", e->replicates, e->seed);
    return e->value;
  }

  void store(const CriticalKey& k, double v, std::size_t reps, std::uint64_t seed) {
    table.put(k, make_entry(v, reps, seed));
    dirty = true;
    note(k, v, "simulated", reps, seed);
  }

  void note(const CriticalKey& k, double v, const char* source, std::uint64_t reps,
            std::uint64_t seed) {
    used.push_back({{"method", k.method},
                    {"family", k.family},
                    {"estimator", k.estimator},
                    {"n", k.n},
                    {"s", k.s},
                    {"alpha", k.alpha},
                    {"side", k.side},
                    {"value", v},
                    {"source", source},
                    {"replicates", reps},
                    {"seed", seed}});
  }

  void save(std::ostream& err) {
    if (!dirty) return;
    try {
      cache_write(path, table);
    } catch (const std::exception& e) {
      err << "warning: could not update cache " << path << ": " << e.what() << "\n";
    }
  }
};

CacheSession open_cache(const std::string& path) {
  CacheSession c;
  c.path = path.empty() ? default_cache_path() : std::filesystem::path(path);
  c.table = cache_load(c.path);
  c.fingerprint_before = cache_fingerprint(c.table);
  return c;
}

void report_simulated(std::ostream& err, const std::string& what, double v, double se,
                      std::size_t reps) {
  err << "simulated " << what << " = " << real(v) << " (MC s.e. " << real(se) << ", " << reps
      << " replicates)\n";
}

// ---------------------------------------------------------------- detect

int cmd_detect(const DetectOptions& o, std::ostream& out, std::ostream& err) {
  Problems p;
  const Family* f = nullptr;
  std::optional<MethodId> m;
  Side side = Side::TwoSided;
  Estimator est = Estimator::MedQn;
  p.check([&] { f = &family_by_name(o.family); });
  p.check([&] { est = estimator_by_name(o.estimator); });
  p.check([&] { m = resolve_method(o.method, o.estimator); });
  if (m) p.check([&] { side = resolve_side(o.side, *m); });
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) p.add("alpha must lie in (0, 1)");
  if (o.s < 0) p.add("s must be positive");
  if (m == MethodId::Rosner && o.s == 0) p.add("s required for Rosner; recommended s=[0.4n]");
  if (o.replicates < 1000) p.add("replicates must be at least 1000");
  if (o.exact && m != MethodId::Bp) p.add("--exact applies to method bp only");
  if (m && f) validate_method_side(p, *m, *f, side);
  p.raise();

  const auto sample = ingest_csv(o.input, o.column);
  std::vector<double> x = sample.values;
  if (o.shape_scale) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > 0.0)) {
        throw DataError("--shape-scale needs positive data; row " + std::to_string(sample.rows[i]) +
                        " holds " + real(x[i]));
      }
      x[i] = std::log(x[i]);
    }
  }
  const auto n = static_cast<long>(x.size());
  std::vector<std::string> warnings;
  if (n <= 15 && !o.force) {
    throw DataError("n = " + std::to_string(n) +
                    " is too small for reliable outlier identification (n <= 15); pass --force "
                    "to run anyway");
  }
  if (n < 20) {
    warnings.push_back("n = " + std::to_string(n) +
                       " is below 20; critical values and classification are unreliable");
  }
  const int s = o.s > 0 ? o.s : (*m == MethodId::Rosner ? static_cast<int>(0.4 * n) : 5);

  auto cache = open_cache(o.cache);
  OutlierReport rep;
  switch (*m) {
    case MethodId::Bp: {
      const double level = side == Side::TwoSided && !f->symmetric ? o.alpha / 2.0 : o.alpha;
      BpConfig cfg;
      cfg.family = *f;
      cfg.alpha = o.alpha;
      cfg.side = side;
      cfg.s = s;
      cfg.use_exact_critical = o.exact;
      if (o.exact) {
        const auto key = bp_exact_key(*f, n, s, o.alpha, side);
        if (auto v = cache.lookup(key)) {
          cfg.critical_value = *v;
        } else {
          double se = 0.0;
          cfg.critical_value = simulate_exact_critical_value_u(*f, n, s, o.alpha, side, o.replicates,
                                                               o.seed, Exec::Parallel, &se);
          report_simulated(err, "exact BP critical value", cfg.critical_value, se, o.replicates);
          cache.store(key, cfg.critical_value, o.replicates, o.seed);
        }
      } else {
        const auto key = bp_asymptotic_key(s, level);
        if (auto v = cache.lookup(key)) {
          cfg.critical_value = *v;
        } else if (has_builtin_critical_value(s, level)) {
          cfg.critical_value = asymptotic_critical_value(s, level);
          cache.note(key, cfg.critical_value, "built-in", kDefaultAsymptoticReplicates,
                     kDefaultCriticalSeed);
        } else {
          double se = 0.0;
          cfg.critical_value =
              simulate_critical_value_v(s, level, o.replicates, o.seed, Exec::Parallel, &se);
          report_simulated(err, "v_alpha(s)", cfg.critical_value, se, o.replicates);
          cache.store(key, cfg.critical_value, o.replicates, o.seed);
        }
      }
      rep = bp_classify(x, cfg);
      break;
    }
    case MethodId::DgRobust:
    case MethodId::DgMl: {
      DgThresholds thr;
      try {
        thr = dg_thresholds_from_table(cache.table, *f, est, n, o.alpha);
        cache.note(dg_key("g_sym", *f, est, n, o.alpha), thr.g_sym, "cache", 0, 0);
      } catch (const MissingCriticalValueError&) {
        thr = dg_thresholds(*f, n, o.alpha, est, o.replicates, o.seed);
        report_simulated(err, "Davies-Gather g_sym", thr.g_sym, thr.g_sym_se, o.replicates);
        dg_thresholds_to_table(cache.table, thr, o.replicates, o.seed);
        cache.dirty = true;
        cache.note(dg_key("g_sym", *f, est, n, o.alpha), thr.g_sym, "simulated", o.replicates,
                   o.seed);
      }
      rep = dg_classify(x, thr, side);
      break;
    }
    case MethodId::Rosner: {
      RosnerConfig cfg;
      cfg.s = s;
      cfg.alpha = o.alpha;
      cfg.side = side;
      if (n > 25) {
        cfg.lambda = rosner_lambdas(n, s, o.alpha, side);
      } else {
        cfg.simulated = true;
        std::vector<double> lambda;
        for (int i = 1; i <= s; ++i) {
          if (auto v = cache.lookup(rosner_key(i, n, s, o.alpha, side))) lambda.push_back(*v);
        }
        if (lambda.size() != static_cast<std::size_t>(s)) {
          lambda = rosner_simulated_lambdas(n, s, o.alpha, side, o.replicates, o.seed);
          err << "simulated Rosner critical values for n = " << n << " (" << o.replicates
              << " replicates)\n";
          for (int i = 1; i <= s; ++i) {
            cache.store(rosner_key(i, n, s, o.alpha, side), lambda[i - 1], o.replicates, o.seed);
          }
        }
        warnings.push_back("n <= 25: Rosner critical values simulated instead of approximated");
        cfg.lambda = lambda;
      }
      rep = rosner_classify(x, cfg);
      break;
    }
    case MethodId::Bolshev:
    case MethodId::Hawkins: {
      const bool bolshev = *m == MethodId::Bolshev;
      const auto key = bolshev ? bolshev_key(n, s, o.alpha, side) : hawkins_key(n, s, o.alpha);
      if (!cache.table.find(key)) {
        double se = 0.0;
        const double v = simulate_baseline_critical(
            bolshev ? BaselineMethod::Bolshev : BaselineMethod::Hawkins, n, s, o.alpha, side,
            o.replicates, o.seed, Exec::Parallel, &se);
        report_simulated(err, std::string(method_name(*m)) + " critical value", v, se,
                         o.replicates);
        cache.store(key, v, o.replicates, o.seed);
      } else {
        cache.lookup(key);
      }
      rep = bolshev ? bolshev_classify(x, s, o.alpha, side, cache.table)
                    : hawkins_classify(x, s, o.alpha, cache.table);
      break;
    }
  }
  cache.save(err);

  ordered_json config = {{"command", "detect"},
                         {"method", o.method},
                         {"family", std::string(f->name)},
                         {"side", side_name(side)},
                         {"alpha", o.alpha},
                         {"s", s},
                         {"estimator", o.estimator},
                         {"input", o.input},
                         {"column", sample.column},
                         {"shape_scale", o.shape_scale},
                         {"exact_critical", o.exact},
                         {"force", o.force},
                         {"seed", o.seed},
                         {"replicates", o.replicates},
                         {"cache", cache.path.string()},
                         {"cache_fingerprint", cache.fingerprint_before},
                         {"critical_values_used", cache.used}};
  if (o.shape_scale) warnings.push_back("values and z-scores refer to ln x");
  const auto json = report_to_json(rep, x, config, warnings);
  if (!o.output.empty()) {
    std::ofstream f_out(o.output, std::ios::binary | std::ios::trunc);
    if (!f_out) throw DataError("cannot write '" + o.output + "'");
    f_out << json.dump(2) << "\n";
  }
  if (o.json) {
    out << json.dump(2) << "\n";
  } else {
    out << report_to_text(rep, x, warnings);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate-critical

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  Problems p;
  const Family* f = nullptr;
  Estimator est = Estimator::MedQn;
  p.check([&] { f = &family_by_name(o.family); });
  p.check([&] { est = estimator_by_name(o.estimator); });
  const std::string method = o.method;
  const bool asymptotic = method == "bp";
  if (method != "bp" && method != "bp-exact" && method != "dg" && method != "rosner" &&
      method != "bolshev" && method != "hawkins") {
    p.add("unknown method '" + method + "' (bp, bp-exact, dg, rosner, bolshev, hawkins)");
  }
  if (!asymptotic && o.n < 3) p.add("--n is required (n >= 3) for method " + method);
  if (o.s < 1) p.add("s must be positive");
  for (double a : o.alphas) {
    if (!(a > 0.0 && a < 1.0)) p.add("alpha must lie in (0, 1)");
  }
  if (o.replicates < 1000) p.add("replicates must be at least 1000");
  Side side = Side::TwoSided;
  p.check([&] {
    side = o.side.empty() ? (method == "hawkins" ? Side::Right : Side::TwoSided)
                          : side_by_name(o.side);
  });
  p.raise();

  auto cache = open_cache(o.cache);
  auto emit = [&](const CriticalKey& k, double v, double se) {
    cache.table.put(k, make_entry(v, o.replicates, o.seed));
    cache.dirty = true;
    out << k.method << "\t" << k.family << "\tn=" << k.n << "\ts=" << k.s << "\talpha=" << real(k.alpha)
        << "\t" << k.side << "\t" << real(v);
    if (se > 0.0) out << "\t(s.e. " << real(se) << ")";
    out << "\n";
  };
  for (double a : o.alphas) {
    double se = 0.0;
    if (method == "bp") {
      const double v = simulate_critical_value_v(o.s, a, o.replicates, o.seed, Exec::Parallel, &se);
      emit(bp_asymptotic_key(o.s, a), v, se);
    } else if (method == "bp-exact") {
      const double v = simulate_exact_critical_value_u(*f, o.n, o.s, a, side, o.replicates, o.seed,
                                                       Exec::Parallel, &se);
      emit(bp_exact_key(*f, o.n, o.s, a, side), v, se);
    } else if (method == "dg") {
      const auto thr = dg_thresholds(*f, o.n, a, est, o.replicates, o.seed);
      const std::pair<const char*, double> fields[] = {{"g_n_alpha", thr.g_n_alpha},
                                                       {"h_n_1_alpha", thr.h_n_1_alpha},
                                                       {"g_sym", thr.g_sym},
                                                       {"g_half", thr.g_half},
                                                       {"h_half", thr.h_half}};
      for (const auto& [name, v] : fields) {
        emit(dg_key(name, *f, est, o.n, a), v, name == std::string("g_sym") ? thr.g_sym_se : 0.0);
      }
    } else if (method == "rosner") {
      const auto lambda = rosner_simulated_lambdas(o.n, o.s, a, side, o.replicates, o.seed);
      for (int i = 1; i <= o.s; ++i) emit(rosner_key(i, o.n, o.s, a, side), lambda[i - 1], 0.0);
    } else {
      const bool bolshev = method == "bolshev";
      const double v =
          simulate_baseline_critical(bolshev ? BaselineMethod::Bolshev : BaselineMethod::Hawkins,
                                     o.n, o.s, a, side, o.replicates, o.seed, Exec::Parallel, &se);
      emit(bolshev ? bolshev_key(o.n, o.s, a, side) : hawkins_key(o.n, o.s, a), v, se);
    }
  }
  cache_write(cache.path, cache.table);
  err << "cache: " << cache.path.string() << " (" << cache.table.size() << " entries)\n";
  return kExitOk;
}

// ---------------------------------------------------------------- experiment

std::ostream* open_output(const std::string& path, std::ofstream& file, std::ostream& out) {
  if (path.empty() || path == "-") return &out;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write '" + path + "'");
  return &file;
}

int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream&) {
  Problems p;
  const Family* f = nullptr;
  ContaminantKind kind = ContaminantKind::TwoParamExponential;
  ContaminationSide cside = ContaminationSide::Both;
  p.check([&] { f = &family_by_name(o.family); });
  p.check([&] { cside = contamination_side_by_name(o.contam_side); });
  if (o.contaminant == "tn" || o.contaminant == "truncated-normal") {
    kind = ContaminantKind::TruncatedNormal;
  } else if (o.contaminant != "exp" && o.contaminant != "exponential") {
    p.add("unknown contaminant '" + o.contaminant + "' (exp, tn)");
  }
  std::vector<MethodId> methods;
  for (const auto& name : o.methods) p.check([&] { methods.push_back(method_by_name(name)); });
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) p.add("alpha must lie in (0, 1)");
  if (o.replicates < 1) p.add("M must be at least 1");
  p.raise();

  std::ofstream file;
  std::ostream& csv = *open_output(o.output, file, out);
  csv << "method,family,n,r,param,d_oo,d_on,d_no,d_nn,significance,M,seed,error\n";
  for (const auto mid : methods) {
    for (const long n : o.n) {
      MethodSpec spec;
      spec.id = mid;
      spec.alpha = o.alpha;
      spec.s = o.s;
      spec.critical_replicates = o.critical_replicates;
      spec.critical_seed = o.critical_seed;
      std::optional<PreparedClassifier> prepared;
      std::string prep_error;
      try {
        spec.side = resolve_side(o.side, mid);
        prepared = prepare_classifier(spec, *f, n);
      } catch (const std::exception& e) {
        prep_error = e.what();
      }
      const std::string label = prepared ? prepared->label : std::string(method_name(mid));
      for (const long r : o.r) {
        for (const double param : o.params) {
          std::string error = prep_error;
          McResult res;
          if (prepared) {
            try {
              const auto cs = kind == ContaminantKind::TwoParamExponential
                                  ? ContaminationSpec::exponential(param, cside, r)
                                  : ContaminationSpec::truncated_normal(param, o.rho, cside, r);
              res = run_experiment(*prepared, *f, n, cs, o.replicates, o.seed);
            } catch (const std::exception& e) {
              error = e.what();
            }
          }
          for (auto& c : error) {
            if (c == ',' || c == '\n') c = ';';
          }
          char row[512];
          if (error.empty()) {
            std::snprintf(row, sizeof row, "%s,%s,%ld,%ld,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%zu,%llu,\n",
                          label.c_str(), std::string(f->name).c_str(), n, r, real(param).c_str(),
                          res.d_oo, res.d_on, res.d_no, res.d_nn, res.significance, o.replicates,
                          static_cast<unsigned long long>(o.seed));
          } else {
            std::snprintf(row, sizeof row, "%s,%s,%ld,%ld,%s,,,,,,%zu,%llu,%s\n", label.c_str(),
                          std::string(f->name).c_str(), n, r, real(param).c_str(), o.replicates,
                          static_cast<unsigned long long>(o.seed), error.c_str());
          }
          csv << row;
        }
      }
    }
  }
  return kExitOk;
}

int cmd_significance(const ExperimentOptions& o, std::ostream& out, std::ostream&) {
  Problems p;
  const Family* f = nullptr;
  std::optional<MethodId> mid;
  p.check([&] { f = &family_by_name(o.family); });
  if (o.methods.size() != 1) p.add("significance-curve takes exactly one --method");
  if (!o.methods.empty()) p.check([&] { mid = method_by_name(o.methods.front()); });
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) p.add("alpha must lie in (0, 1)");
  if (o.replicates < 1) p.add("M must be at least 1");
  p.raise();
  std::ofstream file;
  std::ostream& csv = *open_output(o.output, file, out);
  csv << "method,family,n,significance,se,M,seed\n";
  for (const long n : o.n) {
    MethodSpec spec;
    spec.id = *mid;
    spec.alpha = o.alpha;
    spec.s = o.s;
    spec.side = resolve_side(o.side, *mid);
    spec.critical_replicates = o.critical_replicates;
    spec.critical_seed = o.critical_seed;
    const auto prepared = prepare_classifier(spec, *f, n);
    const auto res = run_experiment(prepared, *f, n, ContaminationSpec{}, o.replicates, o.seed);
    char row[256];
    std::snprintf(row, sizeof row, "%s,%s,%ld,%.6f,%.6f,%zu,%llu\n", prepared.label.c_str(),
                  std::string(f->name).c_str(), n, res.significance, res.se_significance,
                  o.replicates, static_cast<unsigned long long>(o.seed));
    csv << row;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple outlier identification for location-scale and shape-scale samples",
               "outlierkit"};
  app.set_version_flag("--version", OUTLIERKIT_VERSION);
  app.require_subcommand(1);

  DetectOptions d;
  auto* detect = app.add_subcommand("detect", "classify the observations of a CSV column");
  detect->add_option("--method", d.method, "bp, dg, rosner, bolshev or hawkins")
      ->capture_default_str();
  detect->add_option("--family", d.family, "baseline family")->capture_default_str();
  detect->add_option("--side", d.side, "left, right or two (default two; right for hawkins)");
  detect->add_option("--alpha", d.alpha, "significance level")->capture_default_str();
  detect->add_option("--s", d.s, "upper limit of outliers per step (bp: 5, rosner: required)");
  detect->add_option("--estimator", d.estimator, "robust or ml (dg only)")->capture_default_str();
  detect->add_option("--input", d.input, "CSV file")->required();
  detect->add_option("--column", d.column, "column name or 1-based number");
  detect->add_option("--output", d.output, "write the JSON report here");
  detect->add_flag("--json", d.json, "print the JSON report instead of text");
  detect->add_option("--seed", d.seed, "seed of on-the-fly simulations")->capture_default_str();
  detect->add_option("--replicates", d.replicates, "replicates of on-the-fly simulations")
      ->capture_default_str();
  detect->add_option("--cache", d.cache, "critical-value cache (default $OUTLIERKIT_CACHE)");
  detect->add_flag("--force", d.force, "run even when n <= 15");
  detect->add_flag("--shape-scale", d.shape_scale, "classify ln x (shape-scale families)");
  detect->add_flag("--exact", d.exact, "bp: use the simulated finite-sample critical value");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate-critical", "simulate critical values into the cache");
  simulate->add_option("--method", sim.method, "bp, bp-exact, dg, rosner, bolshev or hawkins")
      ->capture_default_str();
  simulate->add_option("--family", sim.family, "baseline family")->capture_default_str();
  simulate->add_option("--side", sim.side, "left, right or two");
  simulate->add_option("--estimator", sim.estimator, "robust or ml (dg)")->capture_default_str();
  simulate->add_option("--n", sim.n, "sample size (not needed for bp)");
  simulate->add_option("--s", sim.s, "upper limit s")->capture_default_str();
  simulate->add_option("--alpha", sim.alphas, "one or more levels")->delimiter(',');
  simulate->add_option("--replicates", sim.replicates)->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--cache", sim.cache, "critical-value cache (default $OUTLIERKIT_CACHE)");

  ExperimentOptions ex;
  auto* experiment = app.add_subcommand("experiment", "masking/swamping Monte Carlo over a grid");
  ExperimentOptions sig;
  auto* curve = app.add_subcommand("significance-curve", "empirical level as a function of n");
  for (auto [cmd, opt] : {std::pair{experiment, &ex}, std::pair{curve, &sig}}) {
    cmd->add_option("--method", opt->methods, "methods (comma separated)")->delimiter(',');
    cmd->add_option("--family", opt->family)->capture_default_str();
    cmd->add_option("--n", opt->n, "sample sizes (comma separated)")->delimiter(',');
    cmd->add_option("--side", opt->side, "method side (default two; right for hawkins)");
    cmd->add_option("--alpha", opt->alpha)->capture_default_str();
    cmd->add_option("--s", opt->s, "0 selects the method default");
    cmd->add_option("--M", opt->replicates, "Monte Carlo replicates")->capture_default_str();
    cmd->add_option("--seed", opt->seed)->capture_default_str();
    cmd->add_option("--critical-replicates", opt->critical_replicates)->capture_default_str();
    cmd->add_option("--critical-seed", opt->critical_seed)->capture_default_str();
    cmd->add_option("--output", opt->output, "CSV file (default stdout)");
  }
  experiment->add_option("--r", ex.r, "contaminant counts (comma separated)")->delimiter(',');
  experiment->add_option("--param", ex.params, "theta or mu values (comma separated)")
      ->delimiter(',');
  experiment->add_option("--contaminant", ex.contaminant, "exp or tn")->capture_default_str();
  experiment->add_option("--rho", ex.rho, "truncated-normal variance")->capture_default_str();
  experiment->add_option("--contam-side", ex.contam_side, "both, right or left")
      ->capture_default_str();
  sig.n = {100, 500, 1000};

  try {
    app.parse(argc, argv);
    if (*detect) return cmd_detect(d, out, err);
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*experiment) return cmd_experiment(ex, out, err);
    if (*curve) return cmd_significance(sig, out, err);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MissingCriticalValueError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DegenerateScaleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace outlierkit::cli
