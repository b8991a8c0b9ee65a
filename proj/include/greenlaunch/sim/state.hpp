#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenlaunch::sim {

// One of n+2 discrete options: schedule ready-pool job i, suspend, or no-op.
struct Action {
  enum class Kind : uint8_t { schedule, suspend, noop };

  Kind kind = Kind::noop;
  int index = -1;  // ready-pool slot for Kind::schedule

  static Action schedule(int i) { return {Kind::schedule, i}; }
  static Action suspend_job() { return {Kind::suspend, -1}; }
  static Action noop() { return {Kind::noop, -1}; }

  // Dense encoding: 0..n-1 schedule slots, n suspend, n+1 no-op.
  int encode(int ready_pool_size) const {
    switch (kind) {
      case Kind::schedule: return index;
      case Kind::suspend: return ready_pool_size;
      case Kind::noop: return ready_pool_size + 1;
    }
    return ready_pool_size + 1;
  }

  static Action decode(int code, int ready_pool_size) {
    if (code < 0 || code > ready_pool_size + 1)
      throw std::out_of_range("action code out of range: " + std::to_string(code));
    if (code < ready_pool_size) return schedule(code);
    if (code == ready_pool_size) return suspend_job();
    return noop();
  }

  bool operator==(const Action& o) const { return kind == o.kind && index == o.index; }
};

struct ObsShape {
  int image_h = 0;
  int image_w = 0;
  int job_dim = 0;

  size_t image_size() const { return static_cast<size_t>(image_h) * image_w; }
  bool operator==(const ObsShape& o) const = default;
};

// Observation handed to policies: resource image scaled to [-1, 1] plus the
// fixed-width ready-pool metadata array.
struct EncodedObs {
  std::vector<float> image;      // image_h * image_w, row-major
  std::vector<float> job_array;  // ready_pool_size * 5

  bool operator==(const EncodedObs& o) const = default;
};

inline constexpr int kJobMetaFields = 5;  // value, qos, req, remaining work, time-to-violation

}  // namespace greenlaunch::sim
