#pragma once

#include <string>
#include <vector>

#include "greenlaunch/sim/state.hpp"

namespace greenlaunch::data {

// One step of experience. Observations are stored encoded so offline
// training never needs a simulator instance.
struct Transition {
  sim::EncodedObs obs;
  int action = 0;
  float reward = 0.0f;
  sim::EncodedObs next_obs;
  bool done = false;
  std::string behavior_tag;

  bool operator==(const Transition& o) const = default;
};

struct Dataset {
  sim::ObsShape shape;
  int n_actions = 0;
  std::string config_hash;
  std::vector<Transition> transitions;

  size_t size() const { return transitions.size(); }
  bool empty() const { return transitions.empty(); }

  bool operator==(const Dataset& o) const = default;
};

}  // namespace greenlaunch::data
