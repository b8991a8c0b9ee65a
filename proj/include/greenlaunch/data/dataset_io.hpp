#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "greenlaunch/common/rng.hpp"
#include "greenlaunch/data/transition.hpp"

namespace greenlaunch::data {

inline constexpr uint32_t kDatasetFormatVersion = 1;

struct LoadResult {
  Dataset dataset;
  std::vector<std::string> warnings;
};

// Binary container: magic, format version, JSON header (shapes, counts,
// config hash, tag table), then length-prefixed little-endian records.
void save_dataset(const Dataset& dataset, std::ostream& os);
void save_dataset(const Dataset& dataset, const std::string& path);

// A non-empty expected_config_hash that disagrees with the header surfaces
// a warning in the result; structural problems throw instead:
// bad magic/fields -> FormatError, wrong version -> VersionError,
// short file -> TruncationError, inconsistent record sizes -> ShapeError.
LoadResult load_dataset(std::istream& is, const std::string& expected_config_hash = "");
LoadResult load_dataset(const std::string& path, const std::string& expected_config_hash = "");

// Draws exact per-part counts (floor plus largest remainder over the
// fractions), subsamples each part uniformly without replacement, then
// shuffles. Throws ConfigError when a part cannot cover its share.
Dataset mix_datasets(const std::vector<std::pair<const Dataset*, double>>& parts, size_t total,
                     uint64_t seed);

// Largest-remainder apportionment of `total` among `fractions`; exposed for
// direct verification.
std::vector<size_t> apportion_counts(const std::vector<double>& fractions, size_t total);

}  // namespace greenlaunch::data
