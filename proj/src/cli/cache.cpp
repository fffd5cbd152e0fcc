#include "outlierkit/cli/cache.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include <unistd.h>

#include "outlierkit/errors.hpp"

namespace outlierkit::cli {

namespace {

const std::string kHeaderPrefix = "# outlierkit-critical-cache v";

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

template <class T>
T parse_field(const std::string& s, const std::string& what, const std::string& where) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError(where + ": bad " + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("OUTLIERKIT_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "outlierkit" / "critical.tsv";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "outlierkit" / "critical.tsv";
  }
  return "outlierkit-critical.tsv";
}

void cache_write(const std::filesystem::path& path, const CriticalValueTable& table) {
  std::ostringstream out;
  out << kHeaderPrefix << kCacheFormatVersion << "\n";
  for (const auto& [k, e] : table) {
    out << k.method << '\t' << k.family << '\t' << k.estimator << '\t' << k.n << '\t' << k.s << '\t'
        << real(k.alpha) << '\t' << k.side << '\t' << real(e.value) << '\t' << e.replicates << '\t'
        << e.seed << '\t' << e.rng_name << '\t' << e.created_at << '\t' << e.tool_version << '\n';
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write cache '" + tmp.string() + "'");
    f << out.str();
    f.flush();
    if (!f) throw DataError("cannot write cache '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

CriticalValueTable cache_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read cache '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind(kHeaderPrefix, 0) != 0) {
    throw DataError(path.string() + ": not an outlierkit critical-value cache");
  }
  const auto version = line.substr(kHeaderPrefix.size());
  if (version != std::to_string(kCacheFormatVersion)) {
    throw DataError(path.string() + ": cache format v" + version + " is not supported (expected v" +
                    std::to_string(kCacheFormatVersion) +
                    "); delete the file or regenerate it with `outlierkit simulate-critical`");
  }
  CriticalValueTable table;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    const auto f = split_tabs(line);
    if (f.size() != 13) {
      throw DataError(where + ": expected 13 tab-separated fields, found " +
                      std::to_string(f.size()));
    }
    CriticalKey k;
    k.method = f[0];
    k.family = f[1];
    k.estimator = f[2];
    k.n = parse_field<long>(f[3], "n", where);
    k.s = parse_field<int>(f[4], "s", where);
    k.alpha = parse_field<double>(f[5], "alpha", where);
    k.side = f[6];
    CriticalEntry e;
    e.value = parse_field<double>(f[7], "value", where);
    e.replicates = parse_field<std::uint64_t>(f[8], "replicates", where);
    e.seed = parse_field<std::uint64_t>(f[9], "seed", where);
    e.rng_name = f[10];
    e.created_at = f[11];
    e.tool_version = f[12];
    try {
      table.put(k, e);
    } catch (const DomainError& ex) {
      throw DataError(where + ": " + ex.what());
    }
  }
  return table;
}

CriticalValueTable cache_load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  return cache_read(path);
}

std::string cache_fingerprint(const CriticalValueTable& table) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& [k, e] : table) {
    mix(k.method);
    mix(k.family);
    mix(k.estimator);
    mix(std::to_string(k.n));
    mix(std::to_string(k.s));
    mix(real(k.alpha));
    mix(k.side);
    mix(real(e.value));
    mix(std::to_string(e.replicates));
    mix(std::to_string(e.seed));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace outlierkit::cli
