#pragma once

#include <stdexcept>
#include <vector>

#include "greenlaunch/common/rng.hpp"
#include "greenlaunch/data/transition.hpp"

namespace greenlaunch::data {

// Fixed-capacity ring with FIFO eviction and uniform with-replacement
// sampling. Single writer; sampling is const.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay buffer capacity must be positive");
    storage_.reserve(capacity < 4096 ? capacity : 4096);
  }

  size_t capacity() const { return capacity_; }
  size_t size() const { return storage_.size(); }
  bool empty() const { return storage_.empty(); }

  void push(Transition t) {
    if (storage_.size() < capacity_) {
      storage_.push_back(std::move(t));
    } else {
      storage_[head_] = std::move(t);
      head_ = (head_ + 1) % capacity_;
    }
  }

  void fill_from(const Dataset& dataset) {
    for (const auto& t : dataset.transitions) push(t);
  }

  std::vector<Transition> sample(int batch, Rng& rng) const {
    if (storage_.empty()) throw std::logic_error("cannot sample from an empty replay buffer");
    std::vector<Transition> out;
    out.reserve(static_cast<size_t>(batch));
    for (int i = 0; i < batch; ++i) {
      out.push_back(storage_[static_cast<size_t>(rng.uniform_u64(storage_.size()))]);
    }
    return out;
  }

  const std::vector<Transition>& storage() const { return storage_; }

 private:
  size_t capacity_;
  size_t head_ = 0;
  std::vector<Transition> storage_;
};

}  // namespace greenlaunch::data
