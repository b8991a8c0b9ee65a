#include "greenlaunch/agents/policy.hpp"

#include "greenlaunch/agents/losses.hpp"

namespace greenlaunch::agents {

namespace {

nn::ModelConfig make_model_config(const sim::ObsShape& shape, int n_actions, const AgentConfig& cfg) {
  nn::ModelConfig mc;
  mc.image_h = shape.image_h;
  mc.image_w = shape.image_w;
  mc.job_dim = shape.job_dim;
  mc.n_actions = n_actions;
  mc.conv1_channels = cfg.conv1_channels;
  mc.conv2_channels = cfg.conv2_channels;
  mc.job_hidden = cfg.job_hidden;
  mc.merge_hidden = cfg.merge_hidden;
  mc.feature_dim = cfg.feature_dim;
  mc.n_critics = cfg.n_critics;
  return mc;
}

sim::ObsShape shape_from_model(const nn::ModelConfig& mc) {
  sim::ObsShape shape;
  shape.image_h = mc.image_h;
  shape.image_w = mc.image_w;
  shape.job_dim = mc.job_dim;
  return shape;
}

}  // namespace

Policy::Policy(const sim::ObsShape& shape, int n_actions, const AgentConfig& cfg)
    : shape_(shape), model_(make_model_config(shape, n_actions, cfg)) {}

Policy::Policy(nn::LoadedCheckpoint<float> loaded)
    : shape_(shape_from_model(loaded.model.config())),
      model_(std::move(loaded.model)),
      popart_(std::move(loaded.popart)) {}

Policy Policy::clone() const {
  Policy out(shape_, model_.config().n_actions, AgentConfig{});
  // Widths must come from the source model, not default agent config.
  out.model_ = nn::AgentModel<float>(model_.config());
  nn::AgentModel<float>& src = model_;
  nn::copy_params(out.model_.all_params(), src.all_params());
  out.popart_ = popart_;
  return out;
}

void Policy::encode_batch(const std::vector<const sim::EncodedObs*>& obs, nn::Mat<float>& image,
                          nn::Mat<float>& jobs) {
  if (obs.empty()) throw ShapeError("encode_batch: empty batch");
  const int B = static_cast<int>(obs.size());
  const int img = static_cast<int>(obs[0]->image.size());
  const int jd = static_cast<int>(obs[0]->job_array.size());
  image = nn::Mat<float>(B, img);
  jobs = nn::Mat<float>(B, jd);
  for (int i = 0; i < B; ++i) {
    if (static_cast<int>(obs[i]->image.size()) != img || static_cast<int>(obs[i]->job_array.size()) != jd) {
      throw ShapeError("encode_batch: inconsistent observation shapes");
    }
    std::copy(obs[i]->image.begin(), obs[i]->image.end(), image.row(i));
    std::copy(obs[i]->job_array.begin(), obs[i]->job_array.end(), jobs.row(i));
  }
}

std::vector<float> Policy::logits(const sim::EncodedObs& obs) const {
  nn::Mat<float> image(1, static_cast<int>(obs.image.size()));
  nn::Mat<float> jobs(1, static_cast<int>(obs.job_array.size()));
  std::copy(obs.image.begin(), obs.image.end(), image.v.begin());
  std::copy(obs.job_array.begin(), obs.job_array.end(), jobs.v.begin());
  const nn::Mat<float>& feat = model_.encoder().forward(image, jobs, false);
  const nn::Mat<float>& out = model_.actor().forward(feat, false);
  return out.v;
}

int Policy::select_action(const sim::EncodedObs& obs, SelectMode mode, Rng& rng, double epsilon) const {
  const int n = n_actions();
  if (mode == SelectMode::epsilon_greedy && rng.uniform() < epsilon) {
    return static_cast<int>(rng.uniform_u64(static_cast<uint64_t>(n)));
  }
  const std::vector<float> raw = logits(obs);
  if (mode == SelectMode::sample) {
    nn::Mat<float> lm(1, n);
    lm.v = raw;
    nn::Mat<float> probs;
    softmax_rows(lm, probs);
    const double u = rng.uniform();
    double cum = 0.0;
    for (int a = 0; a < n; ++a) {
      cum += probs.v[a];
      if (u < cum) return a;
    }
    return n - 1;
  }
  int best = 0;
  for (int a = 1; a < n; ++a) {
    if (raw[a] > raw[best]) best = a;
  }
  return best;
}

void Policy::save(const std::string& path) const { nn::save_checkpoint(path, model_, popart_); }

Policy Policy::load(const std::string& path) { return Policy(nn::load_checkpoint<float>(path)); }

}  // namespace greenlaunch::agents
