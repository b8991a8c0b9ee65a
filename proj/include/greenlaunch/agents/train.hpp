#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "greenlaunch/agents/agent_config.hpp"
#include "greenlaunch/agents/policy.hpp"
#include "greenlaunch/data/replay_buffer.hpp"
#include "greenlaunch/data/transition.hpp"
#include "greenlaunch/sim/env.hpp"

namespace greenlaunch::agents {

struct TelemetryRow {
  int64_t step = 0;
  double actor_loss = 0.0;
  double critic_loss = 0.0;
  double eval_value = std::numeric_limits<double>::quiet_NaN();
  double agreement = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();
};

void write_telemetry_csv(const std::string& path, const std::vector<TelemetryRow>& rows);

// Periodic measurements taken on a snapshot of the in-training policy; the
// checkpoint hook fires on the same cadence.
struct TrainHooks {
  std::function<double(const Policy&)> eval_value;
  std::function<double(const Policy&)> agreement;
  std::function<void(const Policy&, int64_t)> checkpoint;
};

struct TrainResult {
  Policy policy;
  std::vector<TelemetryRow> telemetry;
  int64_t zero_filter_batches = 0;
};

// Gradient-only training on a fixed dataset; no environment exists here.
// bc_mode forces the uniform filter and, unless config says otherwise,
// disables critic training.
TrainResult train_offline(const data::Dataset& dataset, const AgentConfig& config, bool bc_mode,
                          const TrainHooks& hooks = {});

// Environment abstraction for online training; the simulator adapter below
// is the production implementation, tests may supply toy dynamics.
class TrainEnv {
 public:
  virtual ~TrainEnv() = default;
  virtual sim::ObsShape obs_shape() const = 0;
  virtual int n_actions() const = 0;
  virtual sim::EncodedObs observation() const = 0;
  virtual double step(int action_id) = 0;
  virtual bool done() const = 0;
  virtual void reset(uint64_t seed) = 0;
};

class SimTrainEnv : public TrainEnv {
 public:
  explicit SimTrainEnv(const sim::SimConfig& config) : env_(config) {}

  sim::ObsShape obs_shape() const override { return env_.obs_shape(); }
  int n_actions() const override { return env_.n_actions(); }
  sim::EncodedObs observation() const override { return env_.encode_observation(); }
  double step(int action_id) override {
    return env_.step(sim::Action::decode(action_id, env_.config().ready_pool_size)).reward;
  }
  bool done() const override { return env_.done(); }
  void reset(uint64_t seed) override { env_.reset(seed); }

  const sim::DatacenterEnv& env() const { return env_; }

 private:
  sim::DatacenterEnv env_;
};

struct WarmStart {
  const Policy* policy = nullptr;
  const data::Dataset* buffer_fill = nullptr;
};

// Epsilon-greedy interaction with one gradient step per environment step.
// Warm starting copies parameters and/or pre-fills the replay buffer per the
// config flags.
TrainResult train_online(TrainEnv& env, const AgentConfig& config, const WarmStart& warm_start = {},
                         const TrainHooks& hooks = {});

double epsilon_at(const AgentConfig& config, int64_t step);

}  // namespace greenlaunch::agents
