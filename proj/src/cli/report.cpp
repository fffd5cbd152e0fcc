#include "outlierkit/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace outlierkit::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

double z_of(const OutlierReport& r, double x) { return (x - r.fit.mu_hat) / r.fit.sigma_hat; }

}  // namespace

ordered_json report_to_json(const OutlierReport& report, std::span<const double> x,
                            const ordered_json& config, const std::vector<std::string>& warnings) {
  ordered_json j;
  j["tool"] = {{"name", "outlierkit"}, {"version", OUTLIERKIT_VERSION}};
  j["config"] = config;
  j["method"] = report.method;
  j["n"] = x.size();
  j["decision"] = report.decision == Decision::OutliersFound ? "outliers" : "no_outliers";
  auto all = one_based(report.all_outliers());
  std::sort(all.begin(), all.end());
  j["outliers"] = all;
  j["outliers_right"] = one_based(report.outlier_indices_right);
  j["outliers_left"] = one_based(report.outlier_indices_left);
  ordered_json obs = ordered_json::array();
  for (const auto* side : {&report.outlier_indices_right, &report.outlier_indices_left}) {
    for (auto i : *side) {
      obs.push_back({{"index", i + 1},
                     {"value", x[i]},
                     {"z", z_of(report, x[i])},
                     {"side", side == &report.outlier_indices_right ? "right" : "left"}});
    }
  }
  j["outlier_observations"] = obs;
  j["fit"] = {{"location", report.fit.mu_hat},
              {"scale", report.fit.sigma_hat},
              {"estimator", estimator_name(report.fit.method)}};
  j["statistics"] = report.statistics;
  ordered_json crit = ordered_json::array();
  for (double c : report.critical_values) {
    if (std::isfinite(c)) {
      crit.push_back(c);
    } else {
      crit.push_back(nullptr);
    }
  }
  j["critical_values"] = crit;
  if (!report.trail.empty()) {
    ordered_json trail = ordered_json::array();
    for (const auto& t : report.trail) {
      ordered_json step = {{"side", side_name(t.side)},
                           {"step", t.step_index},
                           {"m", t.sample_size_used},
                           {"u", t.u_values},
                           {"d", t.d_l}};
      step["rejected"] = t.rejected_this_step ? ordered_json(*t.rejected_this_step + 1)
                                              : ordered_json(nullptr);
      step["saturated"] = t.saturated;
      trail.push_back(step);
    }
    j["trail"] = trail;
  }
  j["rejection_cap_hit"] = report.rejection_cap_hit;
  j["warnings"] = warnings;
  return j;
}

std::string report_to_text(const OutlierReport& report, std::span<const double> x,
                           const std::vector<std::string>& warnings) {
  std::ostringstream out;
  for (const auto& w : warnings) out << "WARNING: " << w << "\n";
  out << "method: " << report.method << "   n = " << x.size() << "\n";
  out << "fit: location " << fmt("%.6g", report.fit.mu_hat) << ", scale "
      << fmt("%.6g", report.fit.sigma_hat) << " (" << estimator_name(report.fit.method) << ")\n";
  if (report.decision == Decision::NoOutliers) {
    out << "decision: no outliers\n";
  } else {
    out << "decision: " << report.outlier_count() << " outlier(s)\n";
  }
  for (const auto* side : {&report.outlier_indices_right, &report.outlier_indices_left}) {
    if (side->empty()) continue;
    out << (side == &report.outlier_indices_right ? "right" : "left") << " outliers:\n";
    out << "  index        value            z\n";
    for (auto i : *side) {
      char line[96];
      std::snprintf(line, sizeof line, "  %5zu %12.6g %12.4f\n", i + 1, x[i], z_of(report, x[i]));
      out << line;
    }
  }
  if (!report.trail.empty()) {
    out << "steps:\n";
    for (const auto& t : report.trail) {
      char head[64];
      std::snprintf(head, sizeof head, "  %-5s l=%-3d m=%-5ld", std::string(side_name(t.side)).c_str(),
                    t.step_index, t.sample_size_used);
      out << head;
      for (double u : t.u_values) out << " " << fmt("%.6f", u);
      out << "   d=" << t.d_l;
      if (t.rejected_this_step) out << "  removes " << *t.rejected_this_step + 1;
      if (t.saturated) out << "  (saturated)";
      out << "\n";
    }
  }
  if (report.rejection_cap_hit) out << "note: stopped at the n/2 rejection cap\n";
  return out.str();
}

}  // namespace outlierkit::cli
