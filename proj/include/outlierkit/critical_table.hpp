#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "outlierkit/distributions.hpp"
#include "outlierkit/estimators.hpp"

namespace outlierkit {

/// Identifies one simulated critical value. `n == 0` marks an asymptotic
/// value; `estimator` and `family` are "-" when they do not apply.
struct CriticalKey {
  std::string method;
  std::string family = "-";
  std::string estimator = "-";
  long n = 0;
  int s = 0;
  double alpha = 0.0;
  std::string side = "-";

  auto operator<=>(const CriticalKey&) const = default;
};

struct CriticalEntry {
  double value = 0.0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  std::string rng_name;
  std::string created_at;
  std::string tool_version;

  bool operator==(const CriticalEntry&) const = default;
};

/// In-memory table of simulated critical values, keyed uniquely.
class CriticalValueTable {
 public:
  using Map = std::map<CriticalKey, CriticalEntry>;

  /// Inserts or replaces. Throws DomainError if a string field contains a tab
  /// or newline (the on-disk format is tab separated).
  void put(const CriticalKey& key, const CriticalEntry& entry);

  const CriticalEntry* find(const CriticalKey& key) const;
  std::optional<double> value(const CriticalKey& key) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  bool operator==(const CriticalValueTable&) const = default;

 private:
  Map entries_;
};

CriticalKey bp_asymptotic_key(int s, double alpha);
CriticalKey bp_exact_key(const Family& f, long n, int s, double alpha, Side side);
CriticalKey bolshev_key(long n, int s, double alpha, Side side);
CriticalKey hawkins_key(long n, int s, double alpha);
/// field is one of g_n_alpha, h_n_1_alpha, g_sym, g_half, h_half.
CriticalKey dg_key(std::string_view field, const Family& f, Estimator e, long n, double alpha);
CriticalKey rosner_key(int rank, long n, int s, double alpha, Side side);

/// Metadata stamp for a freshly simulated entry.
CriticalEntry make_entry(double value, std::uint64_t replicates, std::uint64_t seed);

}  // namespace outlierkit
