#pragma once

#include <string>
#include <vector>

#include "greenlaunch/agents/agent_config.hpp"
#include "greenlaunch/data/collect.hpp"
#include "greenlaunch/nn/checkpoint.hpp"
#include "greenlaunch/nn/model.hpp"
#include "greenlaunch/nn/popart.hpp"
#include "greenlaunch/sim/state.hpp"

namespace greenlaunch::agents {

enum class SelectMode { sample, greedy, epsilon_greedy };

// A trained (or in-training) agent: shared-trunk actor-critic plus the value
// normalization statistics that give its critics meaning.
class Policy {
 public:
  Policy(const sim::ObsShape& shape, int n_actions, const AgentConfig& cfg);
  explicit Policy(nn::LoadedCheckpoint<float> loaded);

  void init(uint64_t seed) { model_.init(seed); }

  Policy clone() const;

  const sim::ObsShape& obs_shape() const { return shape_; }
  int n_actions() const { return model_.config().n_actions; }
  nn::AgentModel<float>& model() { return model_; }
  const nn::AgentModel<float>& model() const { return model_; }
  nn::PopArt<float>& popart() { return popart_; }
  const nn::PopArt<float>& popart() const { return popart_; }

  // Splits a batch of observations into the image and job-array inputs.
  static void encode_batch(const std::vector<const sim::EncodedObs*>& obs, nn::Mat<float>& image,
                           nn::Mat<float>& jobs);

  // Actor logits for a single observation; uses no training caches.
  std::vector<float> logits(const sim::EncodedObs& obs) const;

  int select_action(const sim::EncodedObs& obs, SelectMode mode, Rng& rng, double epsilon = 0.0) const;

  void save(const std::string& path) const;
  static Policy load(const std::string& path);

 private:
  sim::ObsShape shape_;
  mutable nn::AgentModel<float> model_;
  nn::PopArt<float> popart_;
};

// Adapter so a learned policy can drive data collection and evaluation
// rollouts.
class LearnedActor : public data::Actor {
 public:
  LearnedActor(const Policy& policy, SelectMode mode, uint64_t seed, double epsilon = 0.0,
               std::string name = "learned")
      : policy_(policy), mode_(mode), rng_(seed), epsilon_(epsilon), name_(std::move(name)) {}

  sim::Action act(const sim::DatacenterEnv& env, const sim::EncodedObs& obs) override {
    const int id = policy_.select_action(obs, mode_, rng_, epsilon_);
    return sim::Action::decode(id, env.config().ready_pool_size);
  }

  std::string name() const override { return name_; }

 private:
  const Policy& policy_;
  SelectMode mode_;
  Rng rng_;
  double epsilon_;
  std::string name_;
};

}  // namespace greenlaunch::agents
