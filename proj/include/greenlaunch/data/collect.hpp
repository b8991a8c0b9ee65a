#pragma once

#include <memory>
#include <string>

#include "greenlaunch/common/rng.hpp"
#include "greenlaunch/data/transition.hpp"
#include "greenlaunch/heuristics/heuristics.hpp"
#include "greenlaunch/sim/env.hpp"

namespace greenlaunch::data {

// A behavior policy driving data collection or evaluation. Implementations
// may hold state (rng, network), so act() is non-const.
class Actor {
 public:
  virtual ~Actor() = default;
  virtual sim::Action act(const sim::DatacenterEnv& env, const sim::EncodedObs& obs) = 0;
  virtual std::string name() const = 0;
};

class HeuristicActor : public Actor {
 public:
  explicit HeuristicActor(heuristics::HeuristicKind kind) : kind_(kind) {}
  sim::Action act(const sim::DatacenterEnv& env, const sim::EncodedObs&) override {
    return heuristics::select_action(kind_, env);
  }
  std::string name() const override { return heuristics::to_string(kind_); }

 private:
  heuristics::HeuristicKind kind_;
};

class RandomActor : public Actor {
 public:
  explicit RandomActor(uint64_t seed) : rng_(seed) {}
  sim::Action act(const sim::DatacenterEnv& env, const sim::EncodedObs&) override {
    const int n = env.config().ready_pool_size;
    return sim::Action::decode(static_cast<int>(rng_.uniform_u64(static_cast<uint64_t>(n + 2))), n);
  }
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

class NoOpActor : public Actor {
 public:
  sim::Action act(const sim::DatacenterEnv&, const sim::EncodedObs&) override {
    return sim::Action::noop();
  }
  std::string name() const override { return "noop"; }
};

// Runs n_rollouts independent episodes (seeded from `seed`) and records one
// transition per step, tagged with the actor's name. Stored `done` is always
// false: episodes end on a time limit, not a terminal state, so values
// bootstrap through the boundary. Pass a freshly constructed actor to make
// the output reproducible.
Dataset collect_rollouts(Actor& actor, const sim::SimConfig& config, int n_rollouts,
                         int steps_per_rollout, uint64_t seed);

// Mixed-behavior dataset: rollout i is driven by heuristic i mod 4, so the
// total rollout count matches a single-heuristic set of the same size.
Dataset collect_combo_rollouts(const sim::SimConfig& config, int n_rollouts,
                               int steps_per_rollout, uint64_t seed);

}  // namespace greenlaunch::data
