#include "greenlaunch/agents/agent_config.hpp"

#include <cstdio>
#include <fstream>

#include "greenlaunch/common/errors.hpp"

namespace greenlaunch::agents {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::uniform: return "uniform";
    case FilterKind::binary: return "binary";
    case FilterKind::exp: return "exp";
  }
  return "uniform";
}

FilterKind filter_from_string(const std::string& name) {
  if (name == "uniform") return FilterKind::uniform;
  if (name == "binary") return FilterKind::binary;
  if (name == "exp") return FilterKind::exp;
  throw ConfigError("unknown filter '" + name + "', expected uniform|binary|exp");
}

void AgentConfig::apply_paper_scale() {
  offline_steps = 500000;
  online_steps = 1000000;
  pretrain_steps = 50000;
}

void AgentConfig::validate() const {
  auto positive_int = [](int64_t v, const char* name) {
    if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive_int(conv1_channels, "conv1_channels");
  positive_int(conv2_channels, "conv2_channels");
  positive_int(job_hidden, "job_hidden");
  positive_int(merge_hidden, "merge_hidden");
  positive_int(feature_dim, "feature_dim");
  positive_int(n_critics, "n_critics");
  positive_int(batch_size, "batch_size");
  positive_int(buffer_capacity, "buffer_capacity");
  positive_int(eval_every, "eval_every");
  positive_int(telemetry_every, "telemetry_every");
  if (!(lr > 0.0)) throw ConfigError("lr must be positive");
  if (online_lr < 0.0) throw ConfigError("online_lr must be non-negative");
  if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
  if (!(tau > 0.0) || tau > 1.0) throw ConfigError("tau must be in (0, 1]");
  if (alpha_ent < 0.0) throw ConfigError("alpha_ent must be non-negative");
  if (!(exp_beta > 0.0)) throw ConfigError("exp_beta must be positive");
  if (!(exp_w_max > 0.0)) throw ConfigError("exp_w_max must be positive");
  if (advantage_samples < 0) throw ConfigError("advantage_samples must be non-negative");
  if (offline_steps < 0 || online_steps < 0 || pretrain_steps < 0)
    throw ConfigError("step budgets must be non-negative");
  if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_end < 0.0 || epsilon_end > 1.0)
    throw ConfigError("epsilon bounds must be in [0, 1]");
  if (epsilon_decay_steps < 0) throw ConfigError("epsilon_decay_steps must be non-negative");
}

AgentConfig AgentConfig::from_kv(const KvConfig& kv) {
  AgentConfig cfg;
  cfg.conv1_channels = static_cast<int>(kv.get_int("conv1_channels", cfg.conv1_channels));
  cfg.conv2_channels = static_cast<int>(kv.get_int("conv2_channels", cfg.conv2_channels));
  cfg.job_hidden = static_cast<int>(kv.get_int("job_hidden", cfg.job_hidden));
  cfg.merge_hidden = static_cast<int>(kv.get_int("merge_hidden", cfg.merge_hidden));
  cfg.feature_dim = static_cast<int>(kv.get_int("feature_dim", cfg.feature_dim));
  cfg.n_critics = static_cast<int>(kv.get_int("n_critics", cfg.n_critics));
  cfg.lr = kv.get_double("lr", cfg.lr);
  cfg.online_lr = kv.get_double("online_lr", cfg.online_lr);
  cfg.batch_size = static_cast<int>(kv.get_int("batch_size", cfg.batch_size));
  cfg.gamma = kv.get_double("gamma", cfg.gamma);
  cfg.tau = kv.get_double("tau", cfg.tau);
  cfg.alpha_ent = kv.get_double("alpha_ent", cfg.alpha_ent);
  cfg.filter = filter_from_string(kv.get_string("filter", to_string(cfg.filter)));
  cfg.exp_beta = kv.get_double("exp_beta", cfg.exp_beta);
  cfg.exp_w_max = kv.get_double("exp_w_max", cfg.exp_w_max);
  cfg.advantage_samples = static_cast<int>(kv.get_int("advantage_samples", cfg.advantage_samples));
  cfg.offline_steps = kv.get_int("offline_steps", cfg.offline_steps);
  cfg.online_steps = kv.get_int("online_steps", cfg.online_steps);
  cfg.pretrain_steps = kv.get_int("pretrain_steps", cfg.pretrain_steps);
  cfg.buffer_capacity = kv.get_int("buffer_capacity", cfg.buffer_capacity);
  cfg.epsilon_start = kv.get_double("epsilon_start", cfg.epsilon_start);
  cfg.epsilon_end = kv.get_double("epsilon_end", cfg.epsilon_end);
  cfg.epsilon_decay_steps = kv.get_int("epsilon_decay_steps", cfg.epsilon_decay_steps);
  cfg.warm_start_params = kv.get_bool("warm_start_params", cfg.warm_start_params);
  cfg.warm_start_buffer = kv.get_bool("warm_start_buffer", cfg.warm_start_buffer);
  cfg.bc_train_critic = kv.get_bool("bc_train_critic", cfg.bc_train_critic);
  cfg.eval_every = kv.get_int("eval_every", cfg.eval_every);
  cfg.telemetry_every = kv.get_int("telemetry_every", cfg.telemetry_every);
  cfg.seed = static_cast<uint64_t>(kv.get_int("seed", static_cast<int64_t>(cfg.seed)));
  if (kv.get_bool("paper_scale", false)) cfg.apply_paper_scale();
  cfg.validate();
  return cfg;
}

AgentConfig AgentConfig::load(const std::string& path) { return from_kv(KvConfig::parse_file(path)); }

KvConfig AgentConfig::to_kv() const {
  KvConfig kv;
  kv.set("conv1_channels", std::to_string(conv1_channels));
  kv.set("conv2_channels", std::to_string(conv2_channels));
  kv.set("job_hidden", std::to_string(job_hidden));
  kv.set("merge_hidden", std::to_string(merge_hidden));
  kv.set("feature_dim", std::to_string(feature_dim));
  kv.set("n_critics", std::to_string(n_critics));
  kv.set("lr", fmt_double(lr));
  kv.set("online_lr", fmt_double(online_lr));
  kv.set("batch_size", std::to_string(batch_size));
  kv.set("gamma", fmt_double(gamma));
  kv.set("tau", fmt_double(tau));
  kv.set("alpha_ent", fmt_double(alpha_ent));
  kv.set("filter", to_string(filter));
  kv.set("exp_beta", fmt_double(exp_beta));
  kv.set("exp_w_max", fmt_double(exp_w_max));
  kv.set("advantage_samples", std::to_string(advantage_samples));
  kv.set("offline_steps", std::to_string(offline_steps));
  kv.set("online_steps", std::to_string(online_steps));
  kv.set("pretrain_steps", std::to_string(pretrain_steps));
  kv.set("buffer_capacity", std::to_string(buffer_capacity));
  kv.set("epsilon_start", fmt_double(epsilon_start));
  kv.set("epsilon_end", fmt_double(epsilon_end));
  kv.set("epsilon_decay_steps", std::to_string(epsilon_decay_steps));
  kv.set("warm_start_params", warm_start_params ? "true" : "false");
  kv.set("warm_start_buffer", warm_start_buffer ? "true" : "false");
  kv.set("bc_train_critic", bc_train_critic ? "true" : "false");
  kv.set("eval_every", std::to_string(eval_every));
  kv.set("telemetry_every", std::to_string(telemetry_every));
  kv.set("seed", std::to_string(seed));
  return kv;
}

void AgentConfig::save(const std::string& path) const {
  const KvConfig kv = to_kv();
  std::ofstream os(path);
  if (!os) throw IoError("cannot open config file for writing: " + path);
  for (const auto& [k, v] : kv.entries()) os << k << " = " << v << "\n";
  if (!os) throw IoError("failed writing config file: " + path);
}

}  // namespace greenlaunch::agents
