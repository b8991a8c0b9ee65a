#include "greenlaunch/sim/env.hpp"

#include <algorithm>
#include <cmath>

#include "greenlaunch/common/errors.hpp"

namespace greenlaunch::sim {

DatacenterEnv::DatacenterEnv(SimConfig config) : config_(std::move(config)) {
  config_.validate();
  reset(config_.seed);
}

void DatacenterEnv::reset(uint64_t seed) {
  clock_ = 0;
  next_job_id_ = 0;
  wait_pool_.clear();
  ready_pool_.clear();
  running_.clear();
  finished_value_total_ = 0.0;
  completed_reward_total_ = 0.0;
  penalty_total_ = 0.0;
  jobs_finished_ = 0;
  jobs_expired_ = 0;
  jobs_arrived_ = 0;

  // Independent streams so the trace shape does not depend on how many
  // arrivals get drawn and vice versa.
  const int trace_len = config_.episode_len + config_.t_horizon + 1;
  trace_ = make_power_trace(config_, trace_len, derive_seed(seed, 0));
  arrivals_rng_ = Rng(derive_seed(seed, 1));

  // Offered work per step ~ arrival_rate * E[req * dur]; calibrate against
  // the mean powered-on capacity of this episode's trace.
  double mean_avail = 0.0;
  for (int t = 0; t < config_.episode_len; ++t) mean_avail += trace_.at(t);
  mean_avail /= config_.episode_len;
  const auto& jp = config_.jobs;
  const double mean_req = (1.0 + jp.max_resource_req(config_.r_max)) / 2.0;
  const double mean_dur = (1.0 - jp.long_job_prob) * 0.5 * (jp.dur_short_min + jp.dur_short_max) +
                          jp.long_job_prob * 0.5 * (jp.dur_long_min + jp.dur_long_max);
  arrival_rate_ = config_.lambda_load * mean_avail / (mean_req * mean_dur);

  StepInfo ignored;
  draw_arrivals(0, &ignored);
  promote_waiting();
}

int DatacenterEnv::allocated_at(int64_t t) const {
  int total = 0;
  for (const auto& p : running_)
    if (p.start <= t && t < p.end) total += p.job.resource_req;
  return total;
}

std::optional<int> DatacenterEnv::feasible_start(const Job& job) const {
  const int horizon = config_.t_horizon;
  for (int s = 0; s < horizon; ++s) {
    bool fits = true;
    // Rows past the horizon edge are not visible yet; they are assumed
    // available and reconciled by enforce_power() as they come into view.
    const int last_visible = std::min(s + job.remaining_work, horizon);
    for (int r = s; r < last_visible; ++r) {
      if (free_at(clock_ + r) < job.resource_req) {
        fits = false;
        break;
      }
    }
    if (fits) return s;
  }
  return std::nullopt;
}

std::optional<int> DatacenterEnv::earliest_feasible_row(int slot) const {
  if (slot < 0 || slot >= static_cast<int>(ready_pool_.size())) return std::nullopt;
  return feasible_start(ready_pool_[static_cast<size_t>(slot)]);
}

void DatacenterEnv::return_to_ready(Job job) {
  if (static_cast<int>(ready_pool_.size()) < config_.ready_pool_size) {
    ready_pool_.push_back(std::move(job));
  } else {
    // Ready pool is full; queue at the front so the job re-enters first.
    wait_pool_.push_front(std::move(job));
  }
}

void DatacenterEnv::apply_action(const Action& action, StepInfo* info) {
  switch (action.kind) {
    case Action::Kind::noop:
      return;
    case Action::Kind::schedule: {
      if (action.index < 0 || action.index >= static_cast<int>(ready_pool_.size())) {
        info->invalid_action = true;  // padded or out-of-range slot
        return;
      }
      Job job = ready_pool_[static_cast<size_t>(action.index)];
      const auto start_row = feasible_start(job);
      if (!start_row) {
        info->invalid_action = true;
        return;
      }
      ready_pool_.erase(ready_pool_.begin() + action.index);
      job.lifecycle = Lifecycle::running;
      const int64_t start = clock_ + *start_row;
      running_.push_back({job, start, start + job.remaining_work});
      return;
    }
    case Action::Kind::suspend: {
      if (running_.empty()) {
        info->invalid_action = true;
        return;
      }
      // Lowest-value placed job; ties go to the most recent arrival.
      size_t victim = 0;
      for (size_t i = 1; i < running_.size(); ++i) {
        const auto& a = running_[i].job;
        const auto& b = running_[victim].job;
        if (a.value < b.value || (a.value == b.value && a.id > b.id)) victim = i;
      }
      const double victim_value = running_[victim].job.value;
      const bool has_better =
          std::any_of(ready_pool_.begin(), ready_pool_.end(),
                      [&](const Job& j) { return j.value > victim_value; });
      if (!has_better) {
        info->invalid_action = true;
        return;
      }
      Job job = running_[victim].job;
      running_.erase(running_.begin() + static_cast<ptrdiff_t>(victim));
      job.lifecycle = Lifecycle::suspended;
      return_to_ready(std::move(job));
      return;
    }
  }
}

void DatacenterEnv::draw_arrivals(int64_t arrival_time, StepInfo* info) {
  const int count = arrivals_rng_.poisson(arrival_rate_);
  const auto& jp = config_.jobs;
  for (int k = 0; k < count; ++k) {
    const bool long_job = arrivals_rng_.uniform() < jp.long_job_prob;
    const int duration = long_job
        ? static_cast<int>(arrivals_rng_.uniform_int(jp.dur_long_min, jp.dur_long_max))
        : static_cast<int>(arrivals_rng_.uniform_int(jp.dur_short_min, jp.dur_short_max));
    const int req = static_cast<int>(
        arrivals_rng_.uniform_int(1, jp.max_resource_req(config_.r_max)));
    const double coeff = arrivals_rng_.uniform(jp.value_coeff_min, jp.value_coeff_max);
    const double qos = jp.qos_choices[arrivals_rng_.uniform_u64(jp.qos_choices.size())];
    const double value = duration * req * coeff;
    wait_pool_.push_back(Job::make(next_job_id_++, value, qos, req, duration, arrival_time));
    ++jobs_arrived_;
    ++info->n_arrivals;
  }
}

void DatacenterEnv::promote_waiting() {
  while (!wait_pool_.empty() &&
         static_cast<int>(ready_pool_.size()) < config_.ready_pool_size) {
    Job job = std::move(wait_pool_.front());
    wait_pool_.pop_front();
    if (job.lifecycle == Lifecycle::waiting) job.lifecycle = Lifecycle::ready;
    ready_pool_.push_back(std::move(job));
  }
}

void DatacenterEnv::consume_row(StepInfo* info) {
  const int64_t now = clock_;
  for (size_t i = 0; i < running_.size();) {
    auto& placed = running_[i];
    if (placed.start <= now && now < placed.end) {
      placed.job.remaining_work -= 1;
      if (placed.job.remaining_work == 0) {
        info->completed_value += placed.job.value;
        info->n_completed += 1;
        finished_value_total_ += placed.job.value;
        jobs_finished_ += 1;
        running_.erase(running_.begin() + static_cast<ptrdiff_t>(i));
        continue;
      }
    }
    ++i;
  }
}

void DatacenterEnv::enforce_power(StepInfo* info) {
  // Placements are validated against the trace at scheduling time for every
  // visible row, so only rows entering the window can be oversubscribed.
  // The full sweep keeps the capacity invariant unconditional.
  for (int r = 0; r < config_.t_horizon; ++r) {
    const int64_t t = clock_ + r;
    while (allocated_at(t) > available_at(t)) {
      size_t victim = running_.size();
      for (size_t i = 0; i < running_.size(); ++i) {
        if (!(running_[i].start <= t && t < running_[i].end)) continue;
        if (victim == running_.size()) {
          victim = i;
          continue;
        }
        const auto& a = running_[i].job;
        const auto& b = running_[victim].job;
        if (a.value < b.value || (a.value == b.value && a.id > b.id)) victim = i;
      }
      if (victim == running_.size()) break;
      Job job = running_[victim].job;
      running_.erase(running_.begin() + static_cast<ptrdiff_t>(victim));
      job.lifecycle = Lifecycle::suspended;
      return_to_ready(std::move(job));
      info->n_power_preempted += 1;
    }
  }
}

void DatacenterEnv::settle_qos(StepInfo* info) {
  const int64_t now = clock_;
  const double expire_factor = config_.expire_factor;
  const auto expired = [&](const Job& j) {
    return static_cast<double>(now) > expire_factor * static_cast<double>(j.violation_time);
  };
  const auto late = [&](const Job& j) { return now > j.violation_time; };

  const auto sweep_pool = [&](auto& pool) {
    for (size_t i = 0; i < pool.size();) {
      if (expired(pool[i])) {
        pool[i].lifecycle = Lifecycle::expired;
        info->n_expired += 1;
        jobs_expired_ += 1;
        pool.erase(pool.begin() + static_cast<ptrdiff_t>(i));
        continue;
      }
      if (late(pool[i])) info->penalty_value += pool[i].value;
      ++i;
    }
  };
  sweep_pool(wait_pool_);
  sweep_pool(ready_pool_);
  for (size_t i = 0; i < running_.size();) {
    if (expired(running_[i].job)) {
      running_[i].job.lifecycle = Lifecycle::expired;
      info->n_expired += 1;
      jobs_expired_ += 1;
      running_.erase(running_.begin() + static_cast<ptrdiff_t>(i));
      continue;
    }
    if (late(running_[i].job)) info->penalty_value += running_[i].job.value;
    ++i;
  }
}

StepResult DatacenterEnv::step(const Action& action) {
  if (done()) throw std::logic_error("step() called on a terminal episode");

  StepResult result;
  apply_action(action, &result.info);
  draw_arrivals(clock_ + 1, &result.info);
  consume_row(&result.info);
  clock_ += 1;
  enforce_power(&result.info);
  settle_qos(&result.info);
  promote_waiting();

  result.reward = result.info.completed_value -
                  config_.qos_penalty_coeff * result.info.penalty_value;
  completed_reward_total_ += result.info.completed_value;
  penalty_total_ += result.info.penalty_value;
  result.done = done();
  return result;
}

void DatacenterEnv::inject_job(Job job) {
  wait_pool_.push_back(std::move(job));
  ++jobs_arrived_;
  promote_waiting();
}

EncodedObs DatacenterEnv::encode_observation() const {
  const int h = config_.t_horizon;
  const int w = config_.r_max;
  const double value_norm = config_.jobs.max_value(config_.r_max);
  const double dur_norm = config_.jobs.max_duration();

  EncodedObs obs;
  obs.image.assign(static_cast<size_t>(h) * w, 0.0f);
  for (int r = 0; r < h; ++r) {
    const int64_t t = clock_ + r;
    const int avail = available_at(t);
    float* row = obs.image.data() + static_cast<size_t>(r) * w;
    for (int c = avail; c < w; ++c) row[c] = -1.0f;
    // Occupants drawn left to right in job-id order; units are fungible, the
    // column assignment is only a deterministic rendering.
    std::vector<const PlacedJob*> here;
    for (const auto& p : running_)
      if (p.start <= t && t < p.end) here.push_back(&p);
    std::sort(here.begin(), here.end(),
              [](const PlacedJob* a, const PlacedJob* b) { return a->job.id < b->job.id; });
    int col = 0;
    for (const PlacedJob* p : here) {
      const float cell =
          static_cast<float>(std::clamp(p->job.value / value_norm, 0.0, 1.0));
      for (int k = 0; k < p->job.resource_req && col < avail; ++k) row[col++] = cell;
    }
  }

  obs.job_array.assign(static_cast<size_t>(config_.ready_pool_size) * kJobMetaFields, 0.0f);
  const int slots = std::min<int>(config_.ready_pool_size,
                                  static_cast<int>(ready_pool_.size()));
  for (int i = 0; i < slots; ++i) {
    const Job& j = ready_pool_[static_cast<size_t>(i)];
    float* m = obs.job_array.data() + static_cast<size_t>(i) * kJobMetaFields;
    m[0] = static_cast<float>(std::clamp(j.value / value_norm, 0.0, 1.0));
    m[1] = static_cast<float>(j.qos);
    m[2] = static_cast<float>(std::min(1.0, static_cast<double>(j.resource_req) / w));
    m[3] = static_cast<float>(std::min(1.0, j.remaining_work / dur_norm));
    m[4] = static_cast<float>(
        std::clamp(static_cast<double>(j.violation_time - clock_) / (4.0 * dur_norm), -1.0, 1.0));
  }
  return obs;
}

}  // namespace greenlaunch::sim
