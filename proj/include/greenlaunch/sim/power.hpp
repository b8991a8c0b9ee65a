#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greenlaunch/sim/config.hpp"

namespace greenlaunch::sim {

// Powered-on resource units per timestep. The pool expands and contracts
// with the (renewable) power supply.
struct PowerTrace {
  std::vector<int> available;  // indexed by timestep
  std::string source;

  int at(int64_t t) const {
    if (available.empty()) return 0;
    // Traces shorter than the query horizon repeat cyclically.
    return available[static_cast<size_t>(t % static_cast<int64_t>(available.size()))];
  }

  double mean() const;
};

// Diurnal sinusoid with gaussian jitter, clamped to [R_min, R_max].
PowerTrace synthetic_power_trace(const SimConfig& config, int length, uint64_t seed);

// CSV rows `timestep,available_resources`; header line optional. Values are
// clamped to [0, r_max].
PowerTrace load_power_trace_csv(const std::string& path, int r_max);

// Dispatches on config.power.source.
PowerTrace make_power_trace(const SimConfig& config, int length, uint64_t seed);

}  // namespace greenlaunch::sim
