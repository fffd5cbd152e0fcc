#pragma once

#include <filesystem>
#include <string>

#include "outlierkit/critical_table.hpp"

namespace outlierkit::cli {

inline constexpr int kCacheFormatVersion = 1;

/// $OUTLIERKIT_CACHE if set, else $XDG_CACHE_HOME/outlierkit/critical.tsv,
/// else ~/.cache/outlierkit/critical.tsv.
std::filesystem::path default_cache_path();

/// Header line "# outlierkit-critical-cache v<version>", then one entry per
/// line: method, family, estimator, n, s, alpha, side, value, replicates,
/// seed, rng, created_at, tool_version, tab separated. Reals use 17
/// significant digits so values round-trip exactly. The file is written to a
/// temporary sibling and renamed into place, so concurrent writers never
/// leave a torn file (the last complete write wins).
void cache_write(const std::filesystem::path& path, const CriticalValueTable& table);

/// Throws DataError for an unreadable file, a version mismatch (asking for
/// regeneration) or a malformed line (with its line number).
CriticalValueTable cache_read(const std::filesystem::path& path);

/// cache_read, or an empty table when the file does not exist.
CriticalValueTable cache_load(const std::filesystem::path& path);

/// Stable hash of a table's contents, echoed in reports.
std::string cache_fingerprint(const CriticalValueTable& table);

}  // namespace outlierkit::cli
