#pragma once

#include <string>
#include <vector>

#include "greenlaunch/agents/agent_config.hpp"
#include "greenlaunch/agents/train.hpp"
#include "greenlaunch/eval/evaluate.hpp"
#include "greenlaunch/sim/config.hpp"

namespace greenlaunch::eval {

inline constexpr const char* kExperimentIds[] = {"bc_quality", "offline_vs_bc", "online_scaling",
                                                 "launchpad", "agreement"};

struct ExperimentSpec {
  std::vector<std::string> experiments;  // empty = all five
  std::vector<int> resources{10, 20, 50};
  std::vector<uint64_t> seeds{1, 2, 3, 4, 5};
  int eval_rollouts = 10;
  int rollout_steps = 2000;
  int dataset_rollouts = 8;  // rollouts per dataset; combo splits them round-robin
  std::string output_dir = "runs/experiment";
  agents::AgentConfig agent;
  sim::SimConfig sim;

  std::vector<std::string> enabled() const;
  void apply_paper_scale();
  void validate() const;

  static ExperimentSpec from_kv(const KvConfig& kv);
  static ExperimentSpec load(const std::string& path);
  KvConfig to_kv() const;
  void save(const std::string& path) const;
};

struct ResultRow {
  std::string experiment;
  std::string agent;
  int resources = 0;
  uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

struct CellFailure {
  std::string cell;
  std::string error;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<CellFailure> failures;
  std::string results_path;
  std::string summary_path;
  std::string meta_path;

  bool complete() const { return failures.empty(); }
};

// Crossing counts once an arm's checkpoint eval reaches this fraction of the
// offline reference value, absorbing eval noise around the target itself.
inline constexpr double kLaunchpadTolerance = 0.98;

struct LaunchpadOutcome {
  double target_value = 0.0;
  double warm_final = 0.0;
  double cold_final = 0.0;
  int64_t warm_steps = -1;  // first online step whose checkpoint eval reached the target
  int64_t cold_steps = -1;  // -1 = never reached within the budget
};

// Trains the offline reference, takes its eval as the target, then continues
// that same agent online (params + buffer) against a cold-started online run.
// Shared by the experiment runner and the acceptance gate.
LaunchpadOutcome run_launchpad(const sim::SimConfig& sim_config, const agents::AgentConfig& agent,
                               const data::Dataset& pretrain_data, int eval_rollouts,
                               int rollout_steps, uint64_t seed);

ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_summary_csv(const std::string& path, const std::vector<ResultRow>& rows);

}  // namespace greenlaunch::eval
