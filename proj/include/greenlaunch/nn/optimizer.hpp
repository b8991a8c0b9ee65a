#pragma once

#include <cmath>
#include <vector>

#include "greenlaunch/nn/layers.hpp"

namespace greenlaunch::nn {

enum class OptimizerKind { adam, sgd };

template <typename S>
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, S lr, std::vector<ParamBlock<S>*> blocks, S beta1 = S(0.9), S beta2 = S(0.999),
            S eps = S(1e-8))
      : kind_(kind), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), blocks_(std::move(blocks)) {
    if (kind_ == OptimizerKind::adam) {
      m_.resize(blocks_.size());
      v_.resize(blocks_.size());
      for (std::size_t i = 0; i < blocks_.size(); ++i) {
        m_[i].assign(blocks_[i]->w.size(), S(0));
        v_[i].assign(blocks_[i]->w.size(), S(0));
      }
    }
  }

  void zero_grad() {
    for (auto* b : blocks_) b->zero_grad();
  }

  void step() {
    ++t_;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      ParamBlock<S>& b = *blocks_[i];
      for (const S g : b.g) {
        if (!std::isfinite(static_cast<double>(g))) {
          throw NumericError("non-finite gradient in block " + b.name);
        }
      }
      if (kind_ == OptimizerKind::sgd) {
        for (std::size_t j = 0; j < b.w.size(); ++j) b.w[j] -= lr_ * b.g[j];
        continue;
      }
      const S bc1 = S(1) - std::pow(beta1_, static_cast<S>(t_));
      const S bc2 = S(1) - std::pow(beta2_, static_cast<S>(t_));
      std::vector<S>& m = m_[i];
      std::vector<S>& v = v_[i];
      for (std::size_t j = 0; j < b.w.size(); ++j) {
        const S g = b.g[j];
        m[j] = beta1_ * m[j] + (S(1) - beta1_) * g;
        v[j] = beta2_ * v[j] + (S(1) - beta2_) * g * g;
        const S mhat = m[j] / bc1;
        const S vhat = v[j] / bc2;
        b.w[j] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
      }
    }
  }

  S learning_rate() const { return lr_; }
  void set_learning_rate(S lr) { lr_ = lr; }
  int64_t step_count() const { return t_; }

 private:
  OptimizerKind kind_;
  S lr_;
  S beta1_;
  S beta2_;
  S eps_;
  std::vector<ParamBlock<S>*> blocks_;
  std::vector<std::vector<S>> m_;
  std::vector<std::vector<S>> v_;
  int64_t t_ = 0;
};

}  // namespace greenlaunch::nn
