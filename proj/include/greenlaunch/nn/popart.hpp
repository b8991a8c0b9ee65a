#pragma once

#include <cmath>
#include <vector>

#include "greenlaunch/nn/layers.hpp"

namespace greenlaunch::nn {

template <typename S>
struct PopArtStats {
  S mu = S(0);
  S sigma = S(1);
};

// Running mean/scale of value targets, kept as debiased exponential moving
// averages of the first two moments. Critic heads emit normalized values;
// rescale() keeps their unnormalized outputs intact when the stats move.
template <typename S>
class PopArt {
 public:
  explicit PopArt(S beta = S(3e-4), S sigma_min = S(1e-4)) : beta_(beta), sigma_min_(sigma_min) {}

  PopArtStats<S> stats() const {
    if (count_ == 0) return {S(0), S(1)};
    const S debias = S(1) - std::pow(S(1) - beta_, static_cast<S>(count_));
    const S mu = mu_ / debias;
    const S nu = nu_ / debias;
    const S var = nu - mu * mu;
    const S sigma = std::sqrt(std::max(var, sigma_min_ * sigma_min_));
    return {mu, std::max(sigma, sigma_min_)};
  }

  // One EMA step toward the batch moments.
  void update(const std::vector<S>& targets) {
    if (targets.empty()) return;
    S mean = S(0);
    S mean_sq = S(0);
    for (const S t : targets) {
      mean += t;
      mean_sq += t * t;
    }
    mean /= static_cast<S>(targets.size());
    mean_sq /= static_cast<S>(targets.size());
    mu_ = (S(1) - beta_) * mu_ + beta_ * mean;
    nu_ = (S(1) - beta_) * nu_ + beta_ * mean_sq;
    ++count_;
  }

  S normalize(S target) const {
    const PopArtStats<S> s = stats();
    return (target - s.mu) / s.sigma;
  }

  S unnormalize(S value) const {
    const PopArtStats<S> s = stats();
    return s.sigma * value + s.mu;
  }

  int64_t count() const { return count_; }
  S beta() const { return beta_; }
  S sigma_min() const { return sigma_min_; }

  void restore(S mu, S nu, int64_t count) {
    mu_ = mu;
    nu_ = nu;
    count_ = count;
  }
  S raw_mu() const { return mu_; }
  S raw_nu() const { return nu_; }

 private:
  S beta_;
  S sigma_min_;
  S mu_ = S(0);
  S nu_ = S(0);
  int64_t count_ = 0;
};

// Rewrites a critic head so that sigma_new * head(x) + mu_new equals
// sigma_old * head_old(x) + mu_old for every input.
template <typename S>
void popart_rescale_head(Dense<S>& head, const PopArtStats<S>& old_stats, const PopArtStats<S>& new_stats) {
  const S scale = old_stats.sigma / new_stats.sigma;
  for (S& w : head.weight().w) w *= scale;
  for (S& b : head.bias().w) b = (old_stats.sigma * b + old_stats.mu - new_stats.mu) / new_stats.sigma;
}

// Normalizes targets with refreshed statistics and rescales every critic
// head (online and target) to preserve their unnormalized outputs.
template <typename S>
std::vector<S> popart_update_and_normalize(PopArt<S>& popart, std::vector<Dense<S>*> critic_heads,
                                           const std::vector<S>& targets) {
  const PopArtStats<S> old_stats = popart.stats();
  popart.update(targets);
  const PopArtStats<S> new_stats = popart.stats();
  for (Dense<S>* head : critic_heads) popart_rescale_head(*head, old_stats, new_stats);
  std::vector<S> out(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) out[i] = (targets[i] - new_stats.mu) / new_stats.sigma;
  return out;
}

}  // namespace greenlaunch::nn
