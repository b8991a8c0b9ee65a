#include "greenlaunch/sim/power.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "greenlaunch/common/errors.hpp"
#include "greenlaunch/common/rng.hpp"

namespace greenlaunch::sim {

double PowerTrace::mean() const {
  if (available.empty()) return 0.0;
  return std::accumulate(available.begin(), available.end(), 0.0) /
         static_cast<double>(available.size());
}

PowerTrace synthetic_power_trace(const SimConfig& config, int length, uint64_t seed) {
  const auto& p = config.power;
  const int r_min = std::max(1, static_cast<int>(std::llround(config.r_max * p.min_frac)));
  Rng rng(seed);
  PowerTrace trace;
  trace.source = "synthetic";
  trace.available.resize(static_cast<size_t>(length));
  const double omega = 2.0 * M_PI / p.day_len;
  for (int t = 0; t < length; ++t) {
    const double frac = p.base + p.amp * std::sin(omega * t) + rng.normal(0.0, p.noise_sd);
    const int units = static_cast<int>(std::llround(config.r_max * frac));
    trace.available[static_cast<size_t>(t)] = std::clamp(units, r_min, config.r_max);
  }
  return trace;
}

PowerTrace load_power_trace_csv(const std::string& path, int r_max) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open power trace: " + path);
  PowerTrace trace;
  trace.source = "file";
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string ts, avail;
    if (!std::getline(is, ts, ',') || !std::getline(is, avail)) continue;
    try {
      const int units = static_cast<int>(std::stol(avail));
      trace.available.push_back(std::clamp(units, 0, r_max));
    } catch (const std::exception&) {
      // header line or junk; skip
    }
  }
  if (trace.available.empty()) throw IoError("power trace has no usable rows: " + path);
  return trace;
}

PowerTrace make_power_trace(const SimConfig& config, int length, uint64_t seed) {
  if (config.power.source == "file")
    return load_power_trace_csv(config.power.trace_file, config.r_max);
  return synthetic_power_trace(config, length, seed);
}

}  // namespace greenlaunch::sim
