#include "outlierkit/critical_table.hpp"

#include <chrono>
#include <ctime>
#include <string_view>

#include "outlierkit/errors.hpp"
#include "outlierkit/rng.hpp"

namespace outlierkit {

namespace {

void check_field(const std::string& s) {
  if (s.empty() || s.find_first_of("\t\r\n") != std::string::npos) {
    throw DomainError("critical table field must be non-empty and free of tabs/newlines: '" + s +
                      "'");
  }
}

}  // namespace

void CriticalValueTable::put(const CriticalKey& key, const CriticalEntry& entry) {
  for (const auto* s : {&key.method, &key.family, &key.estimator, &key.side, &entry.rng_name,
                        &entry.created_at, &entry.tool_version}) {
    check_field(*s);
  }
  entries_.insert_or_assign(key, entry);
}

const CriticalEntry* CriticalValueTable::find(const CriticalKey& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<double> CriticalValueTable::value(const CriticalKey& key) const {
  if (const auto* e = find(key)) return e->value;
  return std::nullopt;
}

CriticalKey bp_asymptotic_key(int s, double alpha) {
  return {"bp-v", "-", "-", 0, s, alpha, "-"};
}

CriticalKey bp_exact_key(const Family& f, long n, int s, double alpha, Side side) {
  return {"bp-u", std::string(f.name), "robust", n, s, alpha, std::string(side_name(side))};
}

CriticalKey bolshev_key(long n, int s, double alpha, Side side) {
  return {"bolshev", "normal", "ml", n, s, alpha, std::string(side_name(side))};
}

CriticalKey hawkins_key(long n, int s, double alpha) {
  return {"hawkins", "normal", "ml", n, s, alpha, "right"};
}

CriticalKey dg_key(std::string_view field, const Family& f, Estimator e, long n, double alpha) {
  return {"dg:" + std::string(field), std::string(f.name), std::string(estimator_name(e)), n, 0,
          alpha, "-"};
}

CriticalKey rosner_key(int rank, long n, int s, double alpha, Side side) {
  return {"rosner-lambda-" + std::to_string(rank), "normal", "ml", n, s, alpha,
          std::string(side_name(side))};
}

CriticalEntry make_entry(double value, std::uint64_t replicates, std::uint64_t seed) {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return {value, replicates, seed, std::string(kRngName), buf, OUTLIERKIT_VERSION};
}

}  // namespace outlierkit
