#include "greenlaunch/data/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "greenlaunch/common/binio.hpp"
#include "greenlaunch/common/errors.hpp"

namespace greenlaunch::data {

namespace {

constexpr char kMagic[4] = {'G', 'L', 'D', 'S'};

size_t record_payload_bytes(const sim::ObsShape& shape) {
  const size_t floats = 2 * (shape.image_size() + static_cast<size_t>(shape.job_dim));
  return 4 + 4 + 4 + 1 + 4 * floats;  // tag, action, reward, done, observations
}

void write_obs(std::ostream& os, const sim::EncodedObs& obs) {
  write_le_span<float>(os, obs.image);
  write_le_span<float>(os, obs.job_array);
}

void read_obs(std::istream& is, const sim::ObsShape& shape, sim::EncodedObs* obs) {
  obs->image.resize(shape.image_size());
  obs->job_array.resize(static_cast<size_t>(shape.job_dim));
  read_le_span<float>(is, obs->image);
  read_le_span<float>(is, obs->job_array);
}

void check_obs_shape(const sim::EncodedObs& obs, const sim::ObsShape& shape, size_t index) {
  if (obs.image.size() != shape.image_size() ||
      obs.job_array.size() != static_cast<size_t>(shape.job_dim))
    throw ShapeError("transition " + std::to_string(index) +
                     " does not match the dataset observation shape");
}

}  // namespace

void save_dataset(const Dataset& dataset, std::ostream& os) {
  std::vector<std::string> tags;
  std::map<std::string, uint32_t> tag_ids;
  for (const auto& t : dataset.transitions) {
    if (tag_ids.emplace(t.behavior_tag, static_cast<uint32_t>(tags.size())).second)
      tags.push_back(t.behavior_tag);
  }

  nlohmann::json header;
  header["schema_version"] = 1;
  header["kind"] = "dataset";
  header["config_hash"] = dataset.config_hash;
  header["image_h"] = dataset.shape.image_h;
  header["image_w"] = dataset.shape.image_w;
  header["job_dim"] = dataset.shape.job_dim;
  header["n_actions"] = dataset.n_actions;
  header["count"] = dataset.transitions.size();
  header["tags"] = tags;
  const std::string header_text = header.dump();

  os.write(kMagic, sizeof(kMagic));
  write_le<uint32_t>(os, kDatasetFormatVersion);
  write_le<uint32_t>(os, static_cast<uint32_t>(header_text.size()));
  os.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));

  const auto payload = static_cast<uint32_t>(record_payload_bytes(dataset.shape));
  for (size_t i = 0; i < dataset.transitions.size(); ++i) {
    const Transition& t = dataset.transitions[i];
    check_obs_shape(t.obs, dataset.shape, i);
    check_obs_shape(t.next_obs, dataset.shape, i);
    write_le<uint32_t>(os, payload);
    write_le<uint32_t>(os, tag_ids.at(t.behavior_tag));
    write_le<int32_t>(os, t.action);
    write_le<float>(os, t.reward);
    write_le<uint8_t>(os, t.done ? 1 : 0);
    write_obs(os, t.obs);
    write_obs(os, t.next_obs);
  }
  if (!os) throw IoError("dataset write failed");
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write dataset: " + path);
  save_dataset(dataset, f);
}

LoadResult load_dataset(std::istream& is, const std::string& expected_config_hash) {
  char magic[4] = {};
  is.read(magic, sizeof(magic));
  if (!is) throw TruncationError("dataset shorter than its magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw FormatError("not a dataset file (bad magic)");
  const auto version = read_le<uint32_t>(is);
  if (version != kDatasetFormatVersion)
    throw VersionError("unsupported dataset format version " + std::to_string(version));
  const auto header_len = read_le<uint32_t>(is);
  std::string header_text(header_len, '\0');
  is.read(header_text.data(), header_len);
  if (!is) throw TruncationError("dataset header truncated");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("dataset header is not valid json: ") + e.what());
  }

  LoadResult result;
  Dataset& ds = result.dataset;
  size_t count = 0;
  std::vector<std::string> tags;
  try {
    ds.shape.image_h = header.at("image_h").get<int>();
    ds.shape.image_w = header.at("image_w").get<int>();
    ds.shape.job_dim = header.at("job_dim").get<int>();
    ds.n_actions = header.at("n_actions").get<int>();
    ds.config_hash = header.at("config_hash").get<std::string>();
    count = header.at("count").get<size_t>();
    tags = header.at("tags").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("dataset header is missing fields: ") + e.what());
  }
  if (ds.shape.image_h <= 0 || ds.shape.image_w <= 0 || ds.shape.job_dim <= 0 ||
      ds.n_actions < 2)
    throw FormatError("dataset header has non-positive shapes");
  if (!expected_config_hash.empty() && expected_config_hash != ds.config_hash)
    result.warnings.push_back("dataset config hash " + ds.config_hash +
                              " does not match expected " + expected_config_hash);

  const size_t payload = record_payload_bytes(ds.shape);
  // Grow incrementally so a corrupt count hits TruncationError, not bad_alloc.
  ds.transitions.reserve(std::min<size_t>(count, 1 << 16));
  for (size_t i = 0; i < count; ++i) {
    const auto len = read_le<uint32_t>(is);
    if (len != payload)
      throw ShapeError("record " + std::to_string(i) + " length " + std::to_string(len) +
                       " does not match header shapes (" + std::to_string(payload) + ")");
    Transition& t = ds.transitions.emplace_back();
    const auto tag_id = read_le<uint32_t>(is);
    if (tag_id >= tags.size())
      throw FormatError("record " + std::to_string(i) + " references unknown tag id");
    t.behavior_tag = tags[tag_id];
    t.action = read_le<int32_t>(is);
    if (t.action < 0 || t.action >= ds.n_actions)
      throw FormatError("record " + std::to_string(i) + " action out of range");
    t.reward = read_le<float>(is);
    if (!std::isfinite(t.reward))
      throw FormatError("record " + std::to_string(i) + " has a non-finite reward");
    t.done = read_le<uint8_t>(is) != 0;
    read_obs(is, ds.shape, &t.obs);
    read_obs(is, ds.shape, &t.next_obs);
  }
  return result;
}

LoadResult load_dataset(const std::string& path, const std::string& expected_config_hash) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open dataset: " + path);
  return load_dataset(f, expected_config_hash);
}

std::vector<size_t> apportion_counts(const std::vector<double>& fractions, size_t total) {
  const double sum = std::accumulate(fractions.begin(), fractions.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("mix fractions sum to " + std::to_string(sum) + ", expected 1");
  for (const double f : fractions)
    if (f < 0.0) throw ConfigError("mix fractions must be non-negative");

  std::vector<size_t> counts(fractions.size());
  std::vector<std::pair<double, size_t>> remainders;
  size_t assigned = 0;
  for (size_t i = 0; i < fractions.size(); ++i) {
    const double exact = fractions[i] * static_cast<double>(total);
    counts[i] = static_cast<size_t>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  // Largest remainder first; ties resolve to the earlier part.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t k = 0; assigned < total; ++k, ++assigned) {
    counts[remainders[k % remainders.size()].second] += 1;
  }
  return counts;
}

Dataset mix_datasets(const std::vector<std::pair<const Dataset*, double>>& parts, size_t total,
                     uint64_t seed) {
  if (parts.empty()) throw ConfigError("mix_datasets needs at least one part");
  std::vector<double> fractions;
  for (const auto& [ds, f] : parts) fractions.push_back(f);
  const auto counts = apportion_counts(fractions, total);

  Dataset out;
  out.shape = parts[0].first->shape;
  out.n_actions = parts[0].first->n_actions;
  out.config_hash = parts[0].first->config_hash;
  for (const auto& [ds, f] : parts) {
    if (ds->shape != out.shape || ds->n_actions != out.n_actions)
      throw ShapeError("mix_datasets parts have incompatible shapes");
    if (ds->config_hash != out.config_hash) out.config_hash = "mixed";
  }

  Rng rng(seed);
  out.transitions.reserve(total);
  for (size_t p = 0; p < parts.size(); ++p) {
    const Dataset& src = *parts[p].first;
    const size_t want = counts[p];
    if (want > src.size()) {
      const std::string label =
          src.transitions.empty() ? "untagged" : src.transitions.front().behavior_tag;
      throw ConfigError("mix part " + std::to_string(p) + " ('" + label + "') has " +
                        std::to_string(src.size()) + " transitions, needs " +
                        std::to_string(want));
    }
    // Partial Fisher-Yates over an index vector: uniform without replacement.
    std::vector<size_t> idx(src.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    for (size_t k = 0; k < want; ++k) {
      const size_t j = k + static_cast<size_t>(rng.uniform_u64(idx.size() - k));
      std::swap(idx[k], idx[j]);
      out.transitions.push_back(src.transitions[idx[k]]);
    }
  }
  rng.shuffle(out.transitions);
  return out;
}

}  // namespace greenlaunch::data
