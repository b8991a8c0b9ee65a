#include "greenlaunch/heuristics/heuristics.hpp"

#include "greenlaunch/common/errors.hpp"

namespace greenlaunch::heuristics {

const char* to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::sjf: return "sjf";
    case HeuristicKind::fcfs: return "fcfs";
    case HeuristicKind::qos: return "qos";
    case HeuristicKind::hvf: return "hvf";
  }
  return "?";
}

HeuristicKind heuristic_from_string(std::string_view name) {
  for (const HeuristicKind kind : kAllHeuristics) {
    if (name == to_string(kind)) return kind;
  }
  throw ConfigError("unknown heuristic '" + std::string(name) + "' (expected sjf|fcfs|qos|hvf)");
}

namespace {

// Returns true when `a` beats `b` under the heuristic's key. Strict
// comparisons keep ties on the earliest candidate.
bool better(HeuristicKind kind, const sim::Job& a, const sim::Job& b) {
  switch (kind) {
    case HeuristicKind::sjf: return a.duration < b.duration;
    case HeuristicKind::fcfs: return a.arrival_time < b.arrival_time;
    case HeuristicKind::qos: return a.qos > b.qos;
    case HeuristicKind::hvf: return a.value > b.value;
  }
  return false;
}

}  // namespace

sim::Action select_action(HeuristicKind kind, const std::vector<sim::Job>& ready_pool,
                          int free_capacity) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(ready_pool.size()); ++i) {
    const sim::Job& job = ready_pool[static_cast<size_t>(i)];
    if (job.resource_req > free_capacity) continue;
    if (best < 0 || better(kind, job, ready_pool[static_cast<size_t>(best)])) best = i;
  }
  return best < 0 ? sim::Action::noop() : sim::Action::schedule(best);
}

sim::Action select_action(HeuristicKind kind, const sim::DatacenterEnv& env) {
  return select_action(kind, env.ready_pool(), env.free_at(env.clock()));
}

}  // namespace greenlaunch::heuristics
