#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "greenlaunch/sim/env.hpp"
#include "greenlaunch/sim/state.hpp"

namespace greenlaunch::heuristics {

enum class HeuristicKind { sjf, fcfs, qos, hvf };

inline constexpr HeuristicKind kAllHeuristics[] = {HeuristicKind::sjf, HeuristicKind::fcfs,
                                                   HeuristicKind::qos, HeuristicKind::hvf};

const char* to_string(HeuristicKind kind);

// Accepts the CLI names sjf|fcfs|qos|hvf; throws ConfigError otherwise.
HeuristicKind heuristic_from_string(std::string_view name);

// Picks among ready jobs that fit the free capacity of the current timestep:
// sjf = min duration, fcfs = min arrival_time, qos = max qos, hvf = max value.
// Ties go to the lowest ready-pool index; no fitting job means NoOp.
// Heuristics never suspend.
sim::Action select_action(HeuristicKind kind, const std::vector<sim::Job>& ready_pool,
                          int free_capacity);

sim::Action select_action(HeuristicKind kind, const sim::DatacenterEnv& env);

}  // namespace greenlaunch::heuristics
