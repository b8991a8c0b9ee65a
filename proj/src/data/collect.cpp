#include "greenlaunch/data/collect.hpp"

namespace greenlaunch::data {

Dataset collect_rollouts(Actor& actor, const sim::SimConfig& config, int n_rollouts,
                         int steps_per_rollout, uint64_t seed) {
  Dataset ds;
  ds.config_hash = config.config_hash();

  sim::DatacenterEnv env(config);
  ds.shape = env.obs_shape();
  ds.n_actions = env.n_actions();
  ds.transitions.reserve(static_cast<size_t>(n_rollouts) *
                         static_cast<size_t>(steps_per_rollout));

  const std::string tag = actor.name();
  for (int r = 0; r < n_rollouts; ++r) {
    uint64_t episode = 0;
    const uint64_t rollout_seed = derive_seed(seed, static_cast<uint64_t>(r));
    env.reset(rollout_seed);
    sim::EncodedObs obs = env.encode_observation();
    for (int s = 0; s < steps_per_rollout; ++s) {
      if (env.done()) {
        env.reset(derive_seed(rollout_seed, ++episode));
        obs = env.encode_observation();
      }
      const sim::Action action = actor.act(env, obs);
      const auto res = env.step(action);
      Transition t;
      t.obs = std::move(obs);
      t.action = action.encode(config.ready_pool_size);
      t.reward = static_cast<float>(res.reward);
      t.next_obs = env.encode_observation();
      t.done = false;
      t.behavior_tag = tag;
      obs = t.next_obs;
      ds.transitions.push_back(std::move(t));
    }
  }
  return ds;
}

Dataset collect_combo_rollouts(const sim::SimConfig& config, int n_rollouts,
                               int steps_per_rollout, uint64_t seed) {
  Dataset combo;
  for (int i = 0; i < n_rollouts; ++i) {
    HeuristicActor actor(heuristics::kAllHeuristics[static_cast<size_t>(i) % 4]);
    Dataset part =
        collect_rollouts(actor, config, 1, steps_per_rollout, derive_seed(seed, static_cast<uint64_t>(i)));
    if (combo.transitions.empty()) {
      combo = std::move(part);
    } else {
      combo.transitions.insert(combo.transitions.end(), part.transitions.begin(), part.transitions.end());
    }
  }
  return combo;
}

}  // namespace greenlaunch::data
