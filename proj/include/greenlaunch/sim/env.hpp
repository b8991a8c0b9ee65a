#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "greenlaunch/common/rng.hpp"
#include "greenlaunch/sim/config.hpp"
#include "greenlaunch/sim/job.hpp"
#include "greenlaunch/sim/power.hpp"
#include "greenlaunch/sim/state.hpp"

namespace greenlaunch::sim {

// A job holding resources over the absolute-time interval [start, end).
struct PlacedJob {
  Job job;
  int64_t start = 0;
  int64_t end = 0;
};

struct StepInfo {
  bool invalid_action = false;
  double completed_value = 0.0;  // positive reward component
  double penalty_value = 0.0;    // sum of values of jobs past their qos deadline
  int n_completed = 0;
  int n_expired = 0;
  int n_arrivals = 0;
  int n_power_preempted = 0;
};

struct StepResult {
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

// Deterministic green-datacenter simulation: a power-modulated resource
// pool over a sliding T-step horizon, job arrival/lifecycle, and sparse
// completion/violation rewards.
class DatacenterEnv {
 public:
  explicit DatacenterEnv(SimConfig config);

  const SimConfig& config() const { return config_; }

  void reset() { reset(config_.seed); }
  void reset(uint64_t seed);

  StepResult step(const Action& action);

  EncodedObs encode_observation() const;
  ObsShape obs_shape() const {
    return {config_.t_horizon, config_.r_max, config_.ready_pool_size * kJobMetaFields};
  }
  int n_actions() const { return config_.n_actions(); }

  int64_t clock() const { return clock_; }
  bool done() const { return clock_ >= config_.episode_len; }

  const std::vector<Job>& ready_pool() const { return ready_pool_; }
  const std::deque<Job>& wait_pool() const { return wait_pool_; }
  const std::vector<PlacedJob>& running() const { return running_; }

  int available_at(int64_t t) const { return trace_.at(t); }
  int allocated_at(int64_t t) const;
  int free_at(int64_t t) const { return available_at(t) - allocated_at(t); }
  const PowerTrace& power_trace() const { return trace_; }

  // Mean arrivals per step, calibrated so offered work tracks lambda_load.
  double arrival_rate() const { return arrival_rate_; }

  // Episode ledgers (reset() clears them).
  double finished_value_total() const { return finished_value_total_; }
  double completed_reward_total() const { return completed_reward_total_; }
  double penalty_total() const { return penalty_total_; }
  int64_t jobs_finished() const { return jobs_finished_; }
  int64_t jobs_expired() const { return jobs_expired_; }
  int64_t jobs_arrived() const { return jobs_arrived_; }

  // Places a job directly into the pools, bypassing the arrival process.
  // Supports controlled scenarios; the scheduler CLI never calls it.
  void inject_job(Job job);

  // Earliest feasible start row for scheduling ready-pool job `slot` now,
  // or nullopt when no placement fits within the horizon.
  std::optional<int> earliest_feasible_row(int slot) const;

 private:
  void draw_arrivals(int64_t arrival_time, StepInfo* info);
  void promote_waiting();
  void return_to_ready(Job job);
  void apply_action(const Action& action, StepInfo* info);
  void consume_row(StepInfo* info);
  void enforce_power(StepInfo* info);
  void settle_qos(StepInfo* info);
  std::optional<int> feasible_start(const Job& job) const;

  SimConfig config_;
  PowerTrace trace_;
  Rng arrivals_rng_;
  double arrival_rate_ = 0.0;
  int64_t clock_ = 0;
  int64_t next_job_id_ = 0;

  std::deque<Job> wait_pool_;
  std::vector<Job> ready_pool_;
  std::vector<PlacedJob> running_;

  double finished_value_total_ = 0.0;
  double completed_reward_total_ = 0.0;
  double penalty_total_ = 0.0;
  int64_t jobs_finished_ = 0;
  int64_t jobs_expired_ = 0;
  int64_t jobs_arrived_ = 0;
};

}  // namespace greenlaunch::sim
