#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace greenlaunch::sim {

enum class Lifecycle : uint8_t { waiting, ready, running, suspended, finished, expired };

inline const char* to_string(Lifecycle lc) {
  switch (lc) {
    case Lifecycle::waiting: return "waiting";
    case Lifecycle::ready: return "ready";
    case Lifecycle::running: return "running";
    case Lifecycle::suspended: return "suspended";
    case Lifecycle::finished: return "finished";
    case Lifecycle::expired: return "expired";
  }
  return "?";
}

// Latest acceptable completion time: ceil(expected_finish_time / qos).
// Computed exactly on the binary expansion of qos so results never depend
// on how close expected_finish / qos lands to an integer in floating point.
inline int64_t qos_violation_time(int64_t expected_finish_time, double qos) {
  if (!(qos > 0.0) || qos > 1.0) throw std::domain_error("qos must be in (0, 1]");
  if (expected_finish_time <= 0) return 0;
  int exp = 0;
  const double frac = std::frexp(qos, &exp);  // qos = frac * 2^exp, frac in [0.5, 1)
  const auto mant = static_cast<uint64_t>(std::ldexp(frac, 53));  // 53-bit integer mantissa
  // ceil(e / qos) = ceil(e * 2^(53-exp) / mant); qos <= 1 keeps shift >= 52
  const int shift = 53 - exp;
  unsigned __int128 num = static_cast<unsigned __int128>(expected_finish_time);
  if (shift >= 127 || (num >> (127 - shift)) != 0)
    throw std::overflow_error("qos violation time overflows");
  num <<= shift;
  const unsigned __int128 q = (num + mant - 1) / mant;
  if (q > static_cast<unsigned __int128>(INT64_MAX))
    throw std::overflow_error("qos violation time overflows");
  return static_cast<int64_t>(q);
}

struct Job {
  int64_t id = 0;
  double value = 0.0;        // revenue units, > 0
  double qos = 1.0;          // fraction of time the user wants the job running
  int resource_req = 1;      // resource units, > 0
  int duration = 1;          // timesteps of work, > 0
  int64_t arrival_time = 0;
  int64_t expected_finish_time = 0;  // arrival_time + duration
  int64_t violation_time = 0;        // qos deadline
  int remaining_work = 0;
  Lifecycle lifecycle = Lifecycle::waiting;

  static Job make(int64_t id, double value, double qos, int resource_req, int duration,
                  int64_t arrival_time) {
    Job j;
    j.id = id;
    j.value = value;
    j.qos = qos;
    j.resource_req = resource_req;
    j.duration = duration;
    j.arrival_time = arrival_time;
    j.expected_finish_time = arrival_time + duration;
    j.violation_time = qos_violation_time(j.expected_finish_time, qos);
    j.remaining_work = duration;
    j.lifecycle = Lifecycle::waiting;
    return j;
  }
};

}  // namespace greenlaunch::sim
