#pragma once

#include <cstdint>
#include <string>

#include "greenlaunch/common/kv_config.hpp"

namespace greenlaunch::agents {

enum class FilterKind { uniform, binary, exp };

std::string to_string(FilterKind kind);
FilterKind filter_from_string(const std::string& name);

struct AgentConfig {
  // network widths; input dims come from the dataset or environment
  int conv1_channels = 8;
  int conv2_channels = 16;
  int job_hidden = 64;
  int merge_hidden = 128;
  int feature_dim = 64;
  int n_critics = 2;

  // optimization
  double lr = 3e-4;
  double online_lr = 0.0;  // 0 inherits lr; lets finetuning run slower than pretraining
  int batch_size = 64;
  double gamma = 0.99;
  double tau = 0.005;
  double alpha_ent = 0.01;

  // advantage filter
  FilterKind filter = FilterKind::binary;
  double exp_beta = 1.0;
  double exp_w_max = 20.0;
  int advantage_samples = 4;  // k; 0 switches to the exact expectation

  // step budgets (desk scale)
  int64_t offline_steps = 50000;
  int64_t online_steps = 200000;
  int64_t pretrain_steps = 5000;

  // online interaction
  int64_t buffer_capacity = 1000000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  int64_t epsilon_decay_steps = 0;  // 0 derives online_steps / 10
  bool warm_start_params = true;
  bool warm_start_buffer = true;

  bool bc_train_critic = false;

  // telemetry
  int64_t eval_every = 2000;
  int64_t telemetry_every = 100;

  uint64_t seed = 1;

  int64_t effective_epsilon_decay() const {
    return epsilon_decay_steps > 0 ? epsilon_decay_steps : online_steps / 10;
  }

  double effective_online_lr() const { return online_lr > 0.0 ? online_lr : lr; }

  // Paper-sized step budgets; everything else is unchanged.
  void apply_paper_scale();

  void validate() const;

  static AgentConfig from_kv(const KvConfig& kv);
  static AgentConfig load(const std::string& path);
  KvConfig to_kv() const;
  void save(const std::string& path) const;
};

}  // namespace greenlaunch::agents
