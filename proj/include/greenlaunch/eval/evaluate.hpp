#pragma once

#include <string>
#include <vector>

#include "greenlaunch/agents/policy.hpp"
#include "greenlaunch/data/collect.hpp"
#include "greenlaunch/heuristics/heuristics.hpp"
#include "greenlaunch/sim/config.hpp"

namespace greenlaunch::eval {

inline constexpr const char* kVersion = "greenlaunch-0.1.0";

struct EvalReport {
  std::vector<double> per_rollout;
  double mean = 0.0;
  double ci95 = 0.0;
  std::string config_hash;
  uint64_t seed = 0;
  std::string version = kVersion;

  double min() const;
  double max() const;
};

// Runs n_rollouts independent seeded rollouts of `steps` steps each and
// reports the total job value (completed job values only) per rollout.
// Episodes hitting their time limit reset and keep accumulating.
EvalReport evaluate_actor(data::Actor& actor, const sim::SimConfig& config, int n_rollouts,
                          int steps, uint64_t seed);

// Greedy-mode evaluation of a learned policy.
EvalReport evaluate_policy(const agents::Policy& policy, const sim::SimConfig& config,
                           int n_rollouts, int steps, uint64_t seed);

// Fraction of steps, on rollouts controlled by the heuristic, where the
// probe actor picks the same action the heuristic takes.
double actor_agreement(data::Actor& probe, heuristics::HeuristicKind heuristic,
                       const sim::SimConfig& config, int n_rollouts, int steps, uint64_t seed);

// Same measurement with the policy's greedy action as the probe.
double action_agreement(const agents::Policy& policy, heuristics::HeuristicKind heuristic,
                        const sim::SimConfig& config, int n_rollouts, int steps, uint64_t seed);

}  // namespace greenlaunch::eval
