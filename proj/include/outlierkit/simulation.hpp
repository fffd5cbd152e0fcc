#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "outlierkit/baselines.hpp"
#include "outlierkit/distributions.hpp"
#include "outlierkit/parallel.hpp"
#include "outlierkit/report.hpp"

namespace outlierkit {

enum class ContaminantKind { TwoParamExponential, TruncatedNormal };
enum class ContaminationSide { Right, Left, Both };

/// Contaminant law anchored at the border x_{alpha_n} of the outlier region
/// of F0 (standard parameters) for the experiment's n and alpha_bar.
///   TwoParamExponential: border + theta * E on the right, border - theta * E
///   on the left.
///   TruncatedNormal: N(border + mu, rho) (rho a variance) truncated to the
///   outlier side of the border, mirrored on the left.
/// Both sides: ceil(r/2) contaminants to the right, floor(r/2) to the left,
/// each side anchored at its alpha_n/2 tail quantile.
struct ContaminationSpec {
  ContaminantKind kind = ContaminantKind::TwoParamExponential;
  ContaminationSide side = ContaminationSide::Both;
  long r = 0;
  double theta = 1.0;
  double mu = 0.0;
  double rho = 1.0;
  double alpha_bar = 0.05;

  static ContaminationSpec exponential(double theta, ContaminationSide side, long r);
  static ContaminationSpec truncated_normal(double mu, double rho, ContaminationSide side, long r);
  /// theta or mu, whichever parametrizes the law.
  double parameter() const;
};

std::string_view contamination_side_name(ContaminationSide side);
ContaminationSide contamination_side_by_name(std::string_view name);

struct Replicate {
  std::vector<double> x;
  std::vector<std::size_t> contaminants;  ///< ascending
};

/// n - r draws from F0 followed by r contaminants (the last r positions).
/// Deterministic in (seed, index). Throws ConfigError for r < 0, r >= n or a
/// nonpositive theta/rho.
Replicate generate_replicate(const Family& f, long n, const ContaminationSpec& spec,
                             std::uint64_t seed, std::uint64_t index);

/// Contaminant borders (lower, upper) for the spec; the unused side is infinite.
std::pair<double, double> contamination_anchors(const Family& f, long n,
                                                const ContaminationSpec& spec);

enum class MethodId { Bp, DgRobust, DgMl, Rosner, Bolshev, Hawkins };

std::string_view method_name(MethodId m);
MethodId method_by_name(std::string_view name);

/// Everything needed to turn a method into a ready classifier for one n.
/// s = 0 selects the method default: 5 for BP/Bolshev/Hawkins, [0.4 n] for
/// Rosner.
struct MethodSpec {
  MethodId id = MethodId::Bp;
  Side side = Side::TwoSided;
  double alpha = 0.05;
  int s = 0;
  RosnerLambdaForm rosner_form = RosnerLambdaForm::Printed;
  bool bp_exact = false;
  std::size_t critical_replicates = 100'000;
  std::uint64_t critical_seed = 20240917;
};

int effective_s(const MethodSpec& m, long n);

using Classifier = std::function<OutlierReport(std::span<const double>)>;

struct PreparedClassifier {
  Classifier classify;
  std::string label;                   ///< e.g. "rosner_s20"
  std::vector<double> critical_values;  ///< what the classifier compares with
};

/// Simulates (or approximates) every critical value once, so the returned
/// classifier is pure. Configuration errors surface here, before any replicate.
PreparedClassifier prepare_classifier(const MethodSpec& m, const Family& f, long n);

struct McResult {
  double d_oo = 0.0;  ///< mean contaminants declared
  double d_on = 0.0;  ///< mean contaminants missed (masking)
  double d_no = 0.0;  ///< mean clean observations declared (swamping)
  double d_nn = 0.0;  ///< mean clean observations retained
  double significance = 0.0;  ///< fraction of replicates declaring at least one outlier
  double se_d_oo = 0.0;
  double se_d_on = 0.0;
  double se_d_no = 0.0;
  double se_significance = 0.0;
  std::uint64_t total_oo = 0;
  std::uint64_t total_on = 0;
  std::uint64_t total_no = 0;
  std::uint64_t total_nn = 0;
  std::uint64_t total_rejecting = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  long n = 0;
  long r = 0;
  std::string fingerprint;
};

McResult run_experiment(const PreparedClassifier& method, const Family& f, long n,
                        const ContaminationSpec& spec, std::size_t replicates, std::uint64_t seed,
                        Exec exec = Exec::Parallel);

McResult run_experiment(const MethodSpec& method, const Family& f, long n,
                        const ContaminationSpec& spec, std::size_t replicates, std::uint64_t seed,
                        Exec exec = Exec::Parallel);

/// Empirical level (r = 0) of the method for each n in the grid.
std::vector<std::pair<long, double>> significance_curve(const MethodSpec& method, const Family& f,
                                                        std::span<const long> n_grid,
                                                        std::size_t replicates,
                                                        std::uint64_t seed,
                                                        Exec exec = Exec::Parallel);

}  // namespace outlierkit
