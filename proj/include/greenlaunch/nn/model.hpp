#pragma once

#include <memory>
#include <string>
#include <vector>

#include "greenlaunch/nn/layers.hpp"

namespace greenlaunch::nn {

struct ModelConfig {
  int image_h = 0;
  int image_w = 0;
  int job_dim = 0;
  int n_actions = 0;
  int conv1_channels = 8;
  int conv2_channels = 16;
  int job_hidden = 64;
  int merge_hidden = 128;
  int feature_dim = 64;
  int n_critics = 2;

  int image_size() const { return image_h * image_w; }
  int conv_out_size() const { return conv2_channels * image_h * image_w; }

  void validate() const {
    auto positive = [](int v, const char* name) {
      if (v <= 0) throw ConfigError(std::string("model config: ") + name + " must be positive");
    };
    positive(image_h, "image_h");
    positive(image_w, "image_w");
    positive(job_dim, "job_dim");
    positive(n_actions, "n_actions");
    positive(conv1_channels, "conv1_channels");
    positive(conv2_channels, "conv2_channels");
    positive(job_hidden, "job_hidden");
    positive(merge_hidden, "merge_hidden");
    positive(feature_dim, "feature_dim");
    positive(n_critics, "n_critics");
  }
};

// Shared feature trunk: a small conv stack over the resource image and a
// dense branch over the job array, concatenated and merged down to
// feature_dim.
template <typename S>
class Encoder {
 public:
  explicit Encoder(const ModelConfig& cfg)
      : cfg_(cfg),
        conv1_("encoder.conv1", 1, cfg.conv1_channels, cfg.image_h, cfg.image_w),
        conv2_("encoder.conv2", cfg.conv1_channels, cfg.conv2_channels, cfg.image_h, cfg.image_w),
        job_dense_("encoder.job", cfg.job_dim, cfg.job_hidden),
        merge1_("encoder.merge1", cfg.conv_out_size() + cfg.job_hidden, cfg.merge_hidden),
        merge2_("encoder.merge2", cfg.merge_hidden, cfg.feature_dim) {}

  void init(Rng& rng) {
    conv1_.init_he(rng);
    conv2_.init_he(rng);
    job_dense_.init_he(rng);
    merge1_.init_he(rng);
    merge2_.init_he(rng);
  }

  const Mat<S>& forward(const Mat<S>& image, const Mat<S>& jobs, bool cache = true) {
    require_shape(image, jobs.rows, cfg_.image_size(), "Encoder::forward image");
    require_shape(jobs, image.rows, cfg_.job_dim, "Encoder::forward jobs");
    const Mat<S>& c1 = relu1_.forward(conv1_.forward(image, cache), cache);
    const Mat<S>& c2 = relu2_.forward(conv2_.forward(c1, cache), cache);
    const Mat<S>& jb = job_relu_.forward(job_dense_.forward(jobs, cache), cache);
    Mat<S> merged = hconcat(c2, jb);
    const Mat<S>& m1 = merge_relu1_.forward(merge1_.forward(merged, cache), cache);
    return merge_relu2_.forward(merge2_.forward(m1, cache), cache);
  }

  // Accumulates gradients for all trunk parameters. Input gradients are
  // computed internally and discarded (inputs are data, not parameters).
  void backward(const Mat<S>& dfeat) {
    Mat<S> dm1 = merge2_.backward(merge_relu2_.backward(dfeat));
    Mat<S> dmerged = merge1_.backward(merge_relu1_.backward(dm1));
    const int conv_cols = cfg_.conv_out_size();
    Mat<S> dc2(dmerged.rows, conv_cols);
    Mat<S> djb(dmerged.rows, cfg_.job_hidden);
    for (int r = 0; r < dmerged.rows; ++r) {
      const S* src = dmerged.row(r);
      S* a = dc2.row(r);
      S* b = djb.row(r);
      for (int c = 0; c < conv_cols; ++c) a[c] = src[c];
      for (int c = 0; c < cfg_.job_hidden; ++c) b[c] = src[conv_cols + c];
    }
    job_dense_.backward(job_relu_.backward(djb));
    Mat<S> dc1 = conv2_.backward(relu2_.backward(dc2));
    conv1_.backward(relu1_.backward(dc1));
  }

  std::vector<ParamBlock<S>*> params() {
    std::vector<ParamBlock<S>*> out;
    for (auto* p : conv1_.params()) out.push_back(p);
    for (auto* p : conv2_.params()) out.push_back(p);
    for (auto* p : job_dense_.params()) out.push_back(p);
    for (auto* p : merge1_.params()) out.push_back(p);
    for (auto* p : merge2_.params()) out.push_back(p);
    return out;
  }

  const ModelConfig& config() const { return cfg_; }

 private:
  ModelConfig cfg_;
  Conv2d<S> conv1_;
  Conv2d<S> conv2_;
  Dense<S> job_dense_;
  Dense<S> merge1_;
  Dense<S> merge2_;
  ReLU<S> relu1_;
  ReLU<S> relu2_;
  ReLU<S> job_relu_;
  ReLU<S> merge_relu1_;
  ReLU<S> merge_relu2_;
};

template <typename S>
void copy_params(std::vector<ParamBlock<S>*> dst, std::vector<ParamBlock<S>*> src) {
  if (dst.size() != src.size()) throw ShapeError("copy_params: block count mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (dst[i]->w.size() != src[i]->w.size()) {
      throw ShapeError("copy_params: size mismatch in block " + src[i]->name);
    }
    dst[i]->w = src[i]->w;
  }
}

// target <- (1 - tau) * target + tau * online
template <typename S>
void polyak_update(std::vector<ParamBlock<S>*> target, std::vector<ParamBlock<S>*> online, S tau) {
  if (target.size() != online.size()) throw ShapeError("polyak_update: block count mismatch");
  for (std::size_t i = 0; i < target.size(); ++i) {
    ParamBlock<S>& t = *target[i];
    const ParamBlock<S>& o = *online[i];
    if (t.w.size() != o.w.size()) throw ShapeError("polyak_update: size mismatch in block " + o.name);
    for (std::size_t j = 0; j < t.w.size(); ++j) t.w[j] += tau * (o.w[j] - t.w[j]);
  }
}

// Actor-critic bundle: one shared encoder, a policy head, an ensemble of
// critic heads, and frozen target copies of the encoder and critic heads.
template <typename S>
class AgentModel {
 public:
  explicit AgentModel(const ModelConfig& cfg) : cfg_(cfg), encoder_(cfg), target_encoder_(cfg) {
    cfg_.validate();
    actor_ = std::make_unique<Dense<S>>("actor", cfg.feature_dim, cfg.n_actions);
    for (int e = 0; e < cfg.n_critics; ++e) {
      critics_.push_back(std::make_unique<Dense<S>>("critic" + std::to_string(e), cfg.feature_dim, cfg.n_actions));
      target_critics_.push_back(
          std::make_unique<Dense<S>>("target_critic" + std::to_string(e), cfg.feature_dim, cfg.n_actions));
    }
  }

  void init(uint64_t seed) {
    Rng enc_rng(derive_seed(seed, 1));
    encoder_.init(enc_rng);
    Rng actor_rng(derive_seed(seed, 2));
    actor_->init_normal(actor_rng, S(0.01));
    for (int e = 0; e < cfg_.n_critics; ++e) {
      Rng critic_rng(derive_seed(seed, 10 + static_cast<uint64_t>(e)));
      critics_[e]->init_he(critic_rng);
    }
    sync_targets();
  }

  void sync_targets() {
    copy_params(target_encoder_.params(), encoder_.params());
    for (int e = 0; e < cfg_.n_critics; ++e) copy_params(target_critics_[e]->params(), critics_[e]->params());
  }

  void polyak(S tau) {
    polyak_update(target_encoder_.params(), encoder_.params(), tau);
    for (int e = 0; e < cfg_.n_critics; ++e) {
      polyak_update(target_critics_[e]->params(), critics_[e]->params(), tau);
    }
  }

  Encoder<S>& encoder() { return encoder_; }
  Encoder<S>& target_encoder() { return target_encoder_; }
  Dense<S>& actor() { return *actor_; }
  Dense<S>& critic(int e) { return *critics_[e]; }
  Dense<S>& target_critic(int e) { return *target_critics_[e]; }
  int n_critics() const { return cfg_.n_critics; }
  const ModelConfig& config() const { return cfg_; }

  // Parameters updated by gradient descent.
  std::vector<ParamBlock<S>*> trainable_params() {
    std::vector<ParamBlock<S>*> out = encoder_.params();
    for (auto* p : actor_->params()) out.push_back(p);
    for (auto& c : critics_) {
      for (auto* p : c->params()) out.push_back(p);
    }
    return out;
  }

  std::vector<ParamBlock<S>*> all_params() {
    std::vector<ParamBlock<S>*> out = trainable_params();
    for (auto* p : target_encoder_.params()) out.push_back(p);
    for (auto& c : target_critics_) {
      for (auto* p : c->params()) out.push_back(p);
    }
    return out;
  }

  void zero_grad() {
    for (auto* p : trainable_params()) p->zero_grad();
  }

 private:
  ModelConfig cfg_;
  Encoder<S> encoder_;
  Encoder<S> target_encoder_;
  std::unique_ptr<Dense<S>> actor_;
  std::vector<std::unique_ptr<Dense<S>>> critics_;
  std::vector<std::unique_ptr<Dense<S>>> target_critics_;
};

}  // namespace greenlaunch::nn
