#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greenlaunch/common/kv_config.hpp"

namespace greenlaunch::sim {

inline constexpr int kSimConfigSchemaVersion = 1;

struct PowerParams {
  std::string source = "synthetic";  // synthetic | file
  int day_len = 288;
  double base = 0.7;       // mean fraction of R_max
  double amp = 0.3;        // diurnal swing
  double noise_sd = 0.05;
  double min_frac = 0.5;   // R_min = max(1, round(R_max * min_frac))
  std::string trace_file;  // csv: timestep,available_resources
};

struct JobParams {
  int dur_short_min = 1;
  int dur_short_max = 3;
  int dur_long_min = 10;
  int dur_long_max = 15;
  double long_job_prob = 0.2;
  double value_coeff_min = 0.5;  // value = duration * resource_req * U(min, max)
  double value_coeff_max = 2.0;
  std::vector<double> qos_choices = {0.25, 0.5, 0.75, 1.0};

  int max_resource_req(int r_max) const { return std::max(1, r_max / 5); }
  int max_duration() const { return dur_long_max; }
  // Upper bound on job value; normalizes values into (0, 1] for observations.
  double max_value(int r_max) const {
    return max_duration() * max_resource_req(r_max) * value_coeff_max;
  }
};

struct SimConfig {
  int r_max = 10;            // resource units when fully powered
  int ready_pool_size = 10;  // n; action space is n + 2
  int t_horizon = 20;        // rows of the resource image
  double lambda_load = 1.2;  // offered load fraction
  int episode_len = 2000;
  uint64_t seed = 1;
  double qos_penalty_coeff = 0.1;
  double expire_factor = 2.0;  // force-expire after expire_factor * violation_time
  JobParams jobs;
  PowerParams power;

  int n_actions() const { return ready_pool_size + 2; }

  void validate() const;

  static SimConfig from_kv(const KvConfig& kv);
  static SimConfig load(const std::string& path);
  KvConfig to_kv() const;
  void save(const std::string& path) const;

  // Hash of everything except the seed; identifies the environment shape and
  // dynamics for dataset/checkpoint compatibility checks.
  std::string config_hash() const;
};

}  // namespace greenlaunch::sim
