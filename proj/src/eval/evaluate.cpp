#include "greenlaunch/eval/evaluate.hpp"

#include <algorithm>
#include <cmath>

namespace greenlaunch::eval {

namespace {

double rollout_value(data::Actor& actor, const sim::SimConfig& config, int steps, uint64_t seed) {
  sim::DatacenterEnv env(config);
  env.reset(seed);
  double total = 0.0;
  for (int t = 0; t < steps; ++t) {
    if (env.done()) env.reset(derive_seed(seed, static_cast<uint64_t>(t) + 1));
    const sim::EncodedObs obs = env.encode_observation();
    total += env.step(actor.act(env, obs)).info.completed_value;
  }
  return total;
}

void finish_report(EvalReport& report) {
  const size_t n = report.per_rollout.size();
  if (n == 0) return;
  double sum = 0.0;
  for (double v : report.per_rollout) sum += v;
  report.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : report.per_rollout) ss += (v - report.mean) * (v - report.mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    report.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(n));
  }
}

}  // namespace

double EvalReport::min() const { return *std::min_element(per_rollout.begin(), per_rollout.end()); }
double EvalReport::max() const { return *std::max_element(per_rollout.begin(), per_rollout.end()); }

EvalReport evaluate_actor(data::Actor& actor, const sim::SimConfig& config, int n_rollouts,
                          int steps, uint64_t seed) {
  if (n_rollouts <= 0 || steps <= 0) throw ConfigError("evaluate needs positive rollouts and steps");
  config.validate();
  EvalReport report;
  report.config_hash = config.config_hash();
  report.seed = seed;
  for (int r = 0; r < n_rollouts; ++r) {
    report.per_rollout.push_back(rollout_value(actor, config, steps, derive_seed(seed, static_cast<uint64_t>(r))));
  }
  finish_report(report);
  return report;
}

EvalReport evaluate_policy(const agents::Policy& policy, const sim::SimConfig& config,
                           int n_rollouts, int steps, uint64_t seed) {
  const sim::ObsShape expected{config.t_horizon, config.r_max,
                               config.ready_pool_size * sim::kJobMetaFields};
  if (!(policy.obs_shape() == expected) || policy.n_actions() != config.n_actions()) {
    throw ShapeError("policy shape does not match the environment configuration");
  }
  agents::LearnedActor actor(policy, agents::SelectMode::greedy, derive_seed(seed, 90));
  return evaluate_actor(actor, config, n_rollouts, steps, seed);
}

double actor_agreement(data::Actor& probe, heuristics::HeuristicKind heuristic,
                       const sim::SimConfig& config, int n_rollouts, int steps, uint64_t seed) {
  if (n_rollouts <= 0 || steps <= 0) throw ConfigError("agreement needs positive rollouts and steps");
  config.validate();
  int64_t matches = 0;
  int64_t total = 0;
  for (int r = 0; r < n_rollouts; ++r) {
    const uint64_t rollout_seed = derive_seed(seed, static_cast<uint64_t>(r));
    sim::DatacenterEnv env(config);
    env.reset(rollout_seed);
    for (int t = 0; t < steps; ++t) {
      if (env.done()) env.reset(derive_seed(rollout_seed, static_cast<uint64_t>(t) + 1));
      const sim::EncodedObs obs = env.encode_observation();
      const sim::Action control = heuristics::select_action(heuristic, env);
      const sim::Action probed = probe.act(env, obs);
      if (probed.encode(config.ready_pool_size) == control.encode(config.ready_pool_size)) ++matches;
      ++total;
      env.step(control);
    }
  }
  return static_cast<double>(matches) / static_cast<double>(total);
}

double action_agreement(const agents::Policy& policy, heuristics::HeuristicKind heuristic,
                        const sim::SimConfig& config, int n_rollouts, int steps, uint64_t seed) {
  agents::LearnedActor probe(policy, agents::SelectMode::greedy, derive_seed(seed, 91));
  return actor_agreement(probe, heuristic, config, n_rollouts, steps, seed);
}

}  // namespace greenlaunch::eval
