#include "greenlaunch/sim/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "greenlaunch/common/errors.hpp"

namespace greenlaunch::sim {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt_double(v[i]);
  }
  return s;
}

}  // namespace

void SimConfig::validate() const {
  if (r_max <= 0) throw ConfigError("r_max must be positive");
  if (ready_pool_size <= 0) throw ConfigError("ready_pool_size must be positive");
  if (t_horizon <= 0) throw ConfigError("t_horizon must be positive");
  if (episode_len <= 0) throw ConfigError("episode_len must be positive");
  if (!(lambda_load >= 0.0)) throw ConfigError("lambda_load must be non-negative");
  if (qos_penalty_coeff < 0.0) throw ConfigError("qos_penalty_coeff must be non-negative");
  if (expire_factor < 1.0) throw ConfigError("expire_factor must be >= 1");
  if (jobs.dur_short_min <= 0 || jobs.dur_short_max < jobs.dur_short_min ||
      jobs.dur_long_min <= 0 || jobs.dur_long_max < jobs.dur_long_min)
    throw ConfigError("invalid duration ranges");
  if (jobs.long_job_prob < 0.0 || jobs.long_job_prob > 1.0)
    throw ConfigError("long_job_prob must be in [0, 1]");
  if (!(jobs.value_coeff_min > 0.0) || jobs.value_coeff_max < jobs.value_coeff_min)
    throw ConfigError("invalid value coefficient range");
  if (jobs.qos_choices.empty()) throw ConfigError("qos_choices must not be empty");
  for (const double q : jobs.qos_choices)
    if (!(q > 0.0) || q > 1.0) throw ConfigError("qos choices must be in (0, 1]");
  if (power.source != "synthetic" && power.source != "file")
    throw ConfigError("power_source must be synthetic or file");
  if (power.source == "file" && power.trace_file.empty())
    throw ConfigError("power_source=file requires power_trace_file");
  if (power.day_len <= 0) throw ConfigError("power_day_len must be positive");
  if (!(power.min_frac > 0.0) || power.min_frac > 1.0)
    throw ConfigError("power_min_frac must be in (0, 1]");
}

SimConfig SimConfig::from_kv(const KvConfig& kv) {
  const int64_t version = kv.get_int("schema_version", kSimConfigSchemaVersion);
  if (version != kSimConfigSchemaVersion)
    throw ConfigError("unsupported sim config schema_version: " + std::to_string(version));
  SimConfig c;
  c.r_max = static_cast<int>(kv.get_int("r_max", c.r_max));
  c.ready_pool_size = static_cast<int>(kv.get_int("ready_pool_size", c.ready_pool_size));
  c.t_horizon = static_cast<int>(kv.get_int("t_horizon", c.t_horizon));
  c.lambda_load = kv.get_double("lambda_load", c.lambda_load);
  c.episode_len = static_cast<int>(kv.get_int("episode_len", c.episode_len));
  c.seed = static_cast<uint64_t>(kv.get_int("seed", static_cast<int64_t>(c.seed)));
  c.qos_penalty_coeff = kv.get_double("qos_penalty_coeff", c.qos_penalty_coeff);
  c.expire_factor = kv.get_double("expire_factor", c.expire_factor);
  c.jobs.dur_short_min = static_cast<int>(kv.get_int("dur_short_min", c.jobs.dur_short_min));
  c.jobs.dur_short_max = static_cast<int>(kv.get_int("dur_short_max", c.jobs.dur_short_max));
  c.jobs.dur_long_min = static_cast<int>(kv.get_int("dur_long_min", c.jobs.dur_long_min));
  c.jobs.dur_long_max = static_cast<int>(kv.get_int("dur_long_max", c.jobs.dur_long_max));
  c.jobs.long_job_prob = kv.get_double("long_job_prob", c.jobs.long_job_prob);
  c.jobs.value_coeff_min = kv.get_double("value_coeff_min", c.jobs.value_coeff_min);
  c.jobs.value_coeff_max = kv.get_double("value_coeff_max", c.jobs.value_coeff_max);
  if (kv.has("qos_choices")) c.jobs.qos_choices = kv.get_double_list("qos_choices");
  c.power.source = kv.get_string("power_source", c.power.source);
  c.power.day_len = static_cast<int>(kv.get_int("power_day_len", c.power.day_len));
  c.power.base = kv.get_double("power_base", c.power.base);
  c.power.amp = kv.get_double("power_amp", c.power.amp);
  c.power.noise_sd = kv.get_double("power_noise_sd", c.power.noise_sd);
  c.power.min_frac = kv.get_double("power_min_frac", c.power.min_frac);
  c.power.trace_file = kv.get_string("power_trace_file", c.power.trace_file);
  c.validate();
  return c;
}

SimConfig SimConfig::load(const std::string& path) {
  return from_kv(KvConfig::parse_file(path));
}

KvConfig SimConfig::to_kv() const {
  KvConfig kv;
  kv.set("schema_version", std::to_string(kSimConfigSchemaVersion));
  kv.set("r_max", std::to_string(r_max));
  kv.set("ready_pool_size", std::to_string(ready_pool_size));
  kv.set("t_horizon", std::to_string(t_horizon));
  kv.set("lambda_load", fmt_double(lambda_load));
  kv.set("episode_len", std::to_string(episode_len));
  kv.set("seed", std::to_string(seed));
  kv.set("qos_penalty_coeff", fmt_double(qos_penalty_coeff));
  kv.set("expire_factor", fmt_double(expire_factor));
  kv.set("dur_short_min", std::to_string(jobs.dur_short_min));
  kv.set("dur_short_max", std::to_string(jobs.dur_short_max));
  kv.set("dur_long_min", std::to_string(jobs.dur_long_min));
  kv.set("dur_long_max", std::to_string(jobs.dur_long_max));
  kv.set("long_job_prob", fmt_double(jobs.long_job_prob));
  kv.set("value_coeff_min", fmt_double(jobs.value_coeff_min));
  kv.set("value_coeff_max", fmt_double(jobs.value_coeff_max));
  kv.set("qos_choices", fmt_list(jobs.qos_choices));
  kv.set("power_source", power.source);
  kv.set("power_day_len", std::to_string(power.day_len));
  kv.set("power_base", fmt_double(power.base));
  kv.set("power_amp", fmt_double(power.amp));
  kv.set("power_noise_sd", fmt_double(power.noise_sd));
  kv.set("power_min_frac", fmt_double(power.min_frac));
  if (!power.trace_file.empty()) kv.set("power_trace_file", power.trace_file);
  return kv;
}

void SimConfig::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write config file: " + path);
  const KvConfig kv = to_kv();
  for (const auto& [k, v] : kv.entries()) f << k << " = " << v << "\n";
}

std::string SimConfig::config_hash() const {
  const KvConfig kv = to_kv();
  std::ostringstream ss;
  for (const auto& [k, v] : kv.entries()) {
    if (k == "seed") continue;
    ss << k << "=" << v << "\n";
  }
  return to_hex(fnv1a64(ss.str()));
}

}  // namespace greenlaunch::sim
