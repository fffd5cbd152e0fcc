#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "outlierkit/distributions.hpp"

namespace outlierkit {

/// Recorded in cache metadata so simulated tables can be reproduced.
inline constexpr std::string_view kRngName = "mt19937_64+splitmix64/inversion";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of replicate `index` under master seed `seed`. Independent of the
/// order replicates are executed in.
constexpr std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Random stream of one Monte Carlo replicate. All variates are produced by
/// inversion through library quantile functions, so a stream is the same on
/// every platform (std:: distributions are implementation-defined).
class ReplicateRng {
 public:
  ReplicateRng(std::uint64_t seed, std::uint64_t index) : engine_(replicate_seed(seed, index)) {}

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Standard exponential.
  double exponential() { return -std::log(uniform()); }

  /// Standardized draw from F0.
  double draw(const Family& f) { return quantile(f, uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace outlierkit
