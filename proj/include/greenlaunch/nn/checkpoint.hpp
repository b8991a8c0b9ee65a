#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "greenlaunch/common/binio.hpp"
#include "greenlaunch/nn/model.hpp"
#include "greenlaunch/nn/popart.hpp"

namespace greenlaunch::nn {

inline constexpr char kCheckpointMagic[4] = {'G', 'L', 'C', 'P'};
inline constexpr uint32_t kCheckpointVersion = 1;

inline nlohmann::json model_config_to_json(const ModelConfig& cfg) {
  return nlohmann::json{{"image_h", cfg.image_h},
                        {"image_w", cfg.image_w},
                        {"job_dim", cfg.job_dim},
                        {"n_actions", cfg.n_actions},
                        {"conv1_channels", cfg.conv1_channels},
                        {"conv2_channels", cfg.conv2_channels},
                        {"job_hidden", cfg.job_hidden},
                        {"merge_hidden", cfg.merge_hidden},
                        {"feature_dim", cfg.feature_dim},
                        {"n_critics", cfg.n_critics}};
}

inline ModelConfig model_config_from_json(const nlohmann::json& j) {
  ModelConfig cfg;
  cfg.image_h = j.at("image_h").get<int>();
  cfg.image_w = j.at("image_w").get<int>();
  cfg.job_dim = j.at("job_dim").get<int>();
  cfg.n_actions = j.at("n_actions").get<int>();
  cfg.conv1_channels = j.at("conv1_channels").get<int>();
  cfg.conv2_channels = j.at("conv2_channels").get<int>();
  cfg.job_hidden = j.at("job_hidden").get<int>();
  cfg.merge_hidden = j.at("merge_hidden").get<int>();
  cfg.feature_dim = j.at("feature_dim").get<int>();
  cfg.n_critics = j.at("n_critics").get<int>();
  return cfg;
}

template <typename S>
void save_checkpoint(std::ostream& os, AgentModel<S>& model, const PopArt<S>& popart) {
  nlohmann::json header;
  header["schema_version"] = 1;
  header["kind"] = "checkpoint";
  header["dtype"] = sizeof(S) == 4 ? "f32" : "f64";
  header["model"] = model_config_to_json(model.config());
  header["popart"] = {{"mu", static_cast<double>(popart.raw_mu())},
                      {"nu", static_cast<double>(popart.raw_nu())},
                      {"count", popart.count()},
                      {"beta", static_cast<double>(popart.beta())},
                      {"sigma_min", static_cast<double>(popart.sigma_min())}};
  nlohmann::json blocks = nlohmann::json::array();
  const std::vector<ParamBlock<S>*> params = model.all_params();
  for (const ParamBlock<S>* p : params) {
    blocks.push_back({{"name", p->name}, {"shape", p->shape}, {"count", p->w.size()}});
  }
  header["blocks"] = blocks;

  const std::string header_text = header.dump();
  os.write(kCheckpointMagic, 4);
  write_le<uint32_t>(os, kCheckpointVersion);
  write_le<uint32_t>(os, static_cast<uint32_t>(header_text.size()));
  os.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
  for (const ParamBlock<S>* p : params) {
    write_le_span<S>(os, std::span<const S>(p->w.data(), p->w.size()));
  }
  if (!os) throw IoError("failed to write checkpoint stream");
}

template <typename S>
void save_checkpoint(const std::string& path, AgentModel<S>& model, const PopArt<S>& popart) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open checkpoint file for writing: " + path);
  save_checkpoint(os, model, popart);
}

template <typename S>
struct LoadedCheckpoint {
  AgentModel<S> model;
  PopArt<S> popart;
};

template <typename S>
LoadedCheckpoint<S> load_checkpoint(std::istream& is) {
  char magic[4] = {};
  is.read(magic, 4);
  if (!is) throw TruncationError("checkpoint shorter than its magic");
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0) throw FormatError("not a checkpoint file");
  const uint32_t version = read_le<uint32_t>(is);
  if (version != kCheckpointVersion) {
    throw VersionError("unsupported checkpoint version " + std::to_string(version));
  }
  const uint32_t header_len = read_le<uint32_t>(is);
  std::string header_text(header_len, '\0');
  is.read(header_text.data(), header_len);
  if (!is) throw TruncationError("checkpoint header truncated");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint header is not valid json: ") + e.what());
  }

  try {
    const std::string dtype = header.at("dtype").get<std::string>();
    const std::string expected = sizeof(S) == 4 ? "f32" : "f64";
    if (dtype != expected) {
      throw FormatError("checkpoint dtype is " + dtype + ", expected " + expected);
    }
    const ModelConfig cfg = model_config_from_json(header.at("model"));
    LoadedCheckpoint<S> out{AgentModel<S>(cfg), PopArt<S>(static_cast<S>(header.at("popart").at("beta").get<double>()),
                                                          static_cast<S>(header.at("popart").at("sigma_min").get<double>()))};
    out.popart.restore(static_cast<S>(header.at("popart").at("mu").get<double>()),
                       static_cast<S>(header.at("popart").at("nu").get<double>()),
                       header.at("popart").at("count").get<int64_t>());

    const nlohmann::json& blocks = header.at("blocks");
    std::vector<ParamBlock<S>*> params = out.model.all_params();
    if (blocks.size() != params.size()) {
      throw FormatError("checkpoint lists " + std::to_string(blocks.size()) + " blocks, model has " +
                        std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      const nlohmann::json& b = blocks[i];
      if (b.at("name").get<std::string>() != params[i]->name ||
          b.at("count").get<std::size_t>() != params[i]->w.size()) {
        throw FormatError("checkpoint block " + b.at("name").get<std::string>() + " does not match model block " +
                          params[i]->name);
      }
      read_le_span<S>(is, std::span<S>(params[i]->w.data(), params[i]->w.size()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint header is missing fields: ") + e.what());
  }
}

template <typename S>
LoadedCheckpoint<S> load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint file: " + path);
  return load_checkpoint<S>(is);
}

}  // namespace greenlaunch::nn
