#include "greenlaunch/agents/train.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "greenlaunch/agents/losses.hpp"
#include "greenlaunch/nn/optimizer.hpp"

namespace greenlaunch::agents {

namespace {

using nn::Mat;

struct BatchMats {
  Mat<float> image;
  Mat<float> jobs;
  Mat<float> next_image;
  Mat<float> next_jobs;
  std::vector<int> actions;
  std::vector<float> rewards;
  std::vector<float> not_done;
};

BatchMats assemble(const std::vector<const data::Transition*>& batch) {
  std::vector<const sim::EncodedObs*> obs;
  std::vector<const sim::EncodedObs*> next_obs;
  BatchMats out;
  for (const data::Transition* t : batch) {
    obs.push_back(&t->obs);
    next_obs.push_back(&t->next_obs);
    out.actions.push_back(t->action);
    out.rewards.push_back(t->reward);
    out.not_done.push_back(t->done ? 0.0f : 1.0f);
  }
  Policy::encode_batch(obs, out.image, out.jobs);
  Policy::encode_batch(next_obs, out.next_image, out.next_jobs);
  return out;
}

struct StepOutcome {
  double actor_loss = 0.0;
  double critic_loss = std::numeric_limits<double>::quiet_NaN();
  bool zero_filter = false;
};

// One optimization iteration: critic TD step toward the exact-expectation
// min-ensemble target (with PopArt refresh first) plus the configured actor
// objective, all through a single shared-encoder backward pass.
StepOutcome gradient_step(Policy& policy, nn::Optimizer<float>& opt, const BatchMats& b,
                          const AgentConfig& cfg, bool online_objective, bool train_critic,
                          FilterKind filter, Rng& adv_rng) {
  nn::AgentModel<float>& model = policy.model();
  const int B = b.image.rows;
  const int A = model.config().n_actions;
  const float gamma = static_cast<float>(cfg.gamma);
  StepOutcome out;

  std::vector<float> y_norm;
  if (train_critic) {
    const nn::PopArtStats<float> stats0 = policy.popart().stats();

    const Mat<float>& tfeat = model.target_encoder().forward(b.next_image, b.next_jobs, false);
    std::vector<const Mat<float>*> tq;
    for (int e = 0; e < model.n_critics(); ++e) tq.push_back(&model.target_critic(e).forward(tfeat, false));
    Mat<float> qmin_next = min_ensemble(tq);
    for (float& v : qmin_next.v) v = stats0.sigma * v + stats0.mu;

    const Mat<float>& feat_next = model.encoder().forward(b.next_image, b.next_jobs, false);
    const Mat<float> logits_next = model.actor().forward(feat_next, false);
    Mat<float> probs_next;
    softmax_rows(logits_next, probs_next);

    std::vector<float> y(B);
    for (int i = 0; i < B; ++i) {
      float ev = 0.0f;
      const float* p = probs_next.row(i);
      const float* q = qmin_next.row(i);
      for (int a = 0; a < A; ++a) ev += p[a] * q[a];
      y[i] = b.rewards[i] + gamma * b.not_done[i] * ev;
    }

    std::vector<nn::Dense<float>*> heads;
    for (int e = 0; e < model.n_critics(); ++e) {
      heads.push_back(&model.critic(e));
      heads.push_back(&model.target_critic(e));
    }
    y_norm = nn::popart_update_and_normalize(policy.popart(), heads, y);
  }

  const Mat<float>& feat = model.encoder().forward(b.image, b.jobs, true);
  const Mat<float>& logits = model.actor().forward(feat, true);
  std::vector<const Mat<float>*> q_refs;
  for (int e = 0; e < model.n_critics(); ++e) {
    if (train_critic || online_objective) q_refs.push_back(&model.critic(e).forward(feat, true));
  }

  ActorLoss<float> actor_loss;
  if (online_objective) {
    Mat<float> qmin = min_ensemble(q_refs);
    const nn::PopArtStats<float> stats = policy.popart().stats();
    for (float& v : qmin.v) v = stats.sigma * v + stats.mu;
    actor_loss = online_actor_loss(logits, qmin, static_cast<float>(cfg.alpha_ent));
  } else {
    std::vector<float> weights(static_cast<size_t>(B), 1.0f);
    if (filter != FilterKind::uniform) {
      Mat<float> qmin = min_ensemble(q_refs);
      const nn::PopArtStats<float> stats = policy.popart().stats();
      for (float& v : qmin.v) v = stats.sigma * v + stats.mu;
      Mat<float> probs;
      softmax_rows(logits, probs);
      bool any = false;
      for (int i = 0; i < B; ++i) {
        const float adv = estimate_advantage(qmin.row(i), probs.row(i), A, b.actions[i],
                                             cfg.advantage_samples, &adv_rng);
        weights[i] = filter_value(filter, adv, static_cast<float>(cfg.exp_beta),
                                  static_cast<float>(cfg.exp_w_max));
        any = any || weights[i] != 0.0f;
      }
      out.zero_filter = !any;
    }
    actor_loss = offline_actor_loss(logits, b.actions, weights);
  }
  out.actor_loss = actor_loss.loss;

  opt.zero_grad();
  Mat<float> dfeat = model.actor().backward(actor_loss.dlogits);
  if (train_critic) {
    CriticLoss<float> closs = critic_loss(q_refs, b.actions, y_norm);
    out.critic_loss = closs.loss;
    for (int e = 0; e < model.n_critics(); ++e) {
      Mat<float> d = model.critic(e).backward(closs.dq[e]);
      for (std::size_t i = 0; i < dfeat.v.size(); ++i) dfeat.v[i] += d.v[i];
    }
  }
  model.encoder().backward(dfeat);
  opt.step();

  if (train_critic) model.polyak(static_cast<float>(cfg.tau));
  return out;
}

struct TelemetryTracker {
  const AgentConfig& cfg;
  const TrainHooks& hooks;
  std::vector<TelemetryRow>& rows;
  double actor_sum = 0.0;
  double critic_sum = 0.0;
  int64_t since_last = 0;
  bool critic_seen = false;

  void record(const StepOutcome& step) {
    actor_sum += step.actor_loss;
    if (std::isfinite(step.critic_loss)) {
      critic_sum += step.critic_loss;
      critic_seen = true;
    }
    ++since_last;
  }

  void flush(const Policy& policy, int64_t done, int64_t total, double epsilon) {
    const bool eval_due_now = done % cfg.eval_every == 0 || done == total;
    const bool rows_due = done % cfg.telemetry_every == 0 || eval_due_now;
    if (!rows_due || since_last == 0) return;
    TelemetryRow row;
    row.step = done;
    row.actor_loss = actor_sum / static_cast<double>(since_last);
    row.critic_loss = critic_seen ? critic_sum / static_cast<double>(since_last)
                                  : std::numeric_limits<double>::quiet_NaN();
    row.epsilon = epsilon;
    if (eval_due_now) {
      if (hooks.eval_value) row.eval_value = hooks.eval_value(policy);
      if (hooks.agreement) row.agreement = hooks.agreement(policy);
      if (hooks.checkpoint) hooks.checkpoint(policy, done);
    }
    rows.push_back(row);
    actor_sum = 0.0;
    critic_sum = 0.0;
    since_last = 0;
    critic_seen = false;
  }
};

std::vector<const data::Transition*> sample_dataset(const data::Dataset& ds, int batch, Rng& rng) {
  std::vector<const data::Transition*> out;
  out.reserve(static_cast<size_t>(batch));
  for (int i = 0; i < batch; ++i) {
    out.push_back(&ds.transitions[static_cast<size_t>(rng.uniform_u64(ds.transitions.size()))]);
  }
  return out;
}

std::string csv_field(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8g", v);
  return buf;
}

}  // namespace

void write_telemetry_csv(const std::string& path, const std::vector<TelemetryRow>& rows) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open telemetry file for writing: " + path);
  os << "step,actor_loss,critic_loss,eval_value,agreement,epsilon\n";
  for (const TelemetryRow& r : rows) {
    os << r.step << ',' << csv_field(r.actor_loss) << ',' << csv_field(r.critic_loss) << ','
       << csv_field(r.eval_value) << ',' << csv_field(r.agreement) << ',' << csv_field(r.epsilon) << "\n";
  }
  if (!os) throw IoError("failed writing telemetry file: " + path);
}

double epsilon_at(const AgentConfig& config, int64_t step) {
  const int64_t decay = config.effective_epsilon_decay();
  if (decay <= 0) return config.epsilon_end;
  const double frac = std::min(1.0, static_cast<double>(step) / static_cast<double>(decay));
  return config.epsilon_start + (config.epsilon_end - config.epsilon_start) * frac;
}

TrainResult train_offline(const data::Dataset& dataset, const AgentConfig& config, bool bc_mode,
                          const TrainHooks& hooks) {
  config.validate();
  if (dataset.transitions.empty()) throw ConfigError("offline training needs a nonempty dataset");

  Policy policy(dataset.shape, dataset.n_actions, config);
  policy.init(config.seed);
  Rng sample_rng(derive_seed(config.seed, 20));
  Rng adv_rng(derive_seed(config.seed, 21));

  const FilterKind filter = bc_mode ? FilterKind::uniform : config.filter;
  const bool train_critic = bc_mode ? config.bc_train_critic : true;

  // The optimizer holds raw block pointers, so the policy must reach its
  // final address before the optimizer sees it.
  TrainResult result{std::move(policy), {}, 0};
  nn::Optimizer<float> opt(nn::OptimizerKind::adam, static_cast<float>(config.lr),
                           result.policy.model().trainable_params());
  TelemetryTracker tracker{config, hooks, result.telemetry};
  for (int64_t t = 0; t < config.offline_steps; ++t) {
    const BatchMats batch = assemble(sample_dataset(dataset, config.batch_size, sample_rng));
    const StepOutcome step =
        gradient_step(result.policy, opt, batch, config, false, train_critic, filter, adv_rng);
    if (step.zero_filter) ++result.zero_filter_batches;
    tracker.record(step);
    tracker.flush(result.policy, t + 1, config.offline_steps, std::numeric_limits<double>::quiet_NaN());
  }
  return result;
}

TrainResult train_online(TrainEnv& env, const AgentConfig& config, const WarmStart& warm_start,
                         const TrainHooks& hooks) {
  config.validate();

  std::optional<Policy> policy;
  if (warm_start.policy != nullptr && config.warm_start_params) {
    policy = warm_start.policy->clone();
    if (policy->n_actions() != env.n_actions()) {
      throw ShapeError("warm-start policy action space does not match the environment");
    }
  } else {
    policy.emplace(env.obs_shape(), env.n_actions(), config);
    policy->init(config.seed);
  }
  data::ReplayBuffer buffer(static_cast<size_t>(config.buffer_capacity));
  if (warm_start.buffer_fill != nullptr && config.warm_start_buffer) {
    buffer.fill_from(*warm_start.buffer_fill);
  }

  Rng action_rng(derive_seed(config.seed, 30));
  Rng sample_rng(derive_seed(config.seed, 31));
  Rng adv_rng(derive_seed(config.seed, 32));

  uint64_t episode = 0;
  env.reset(derive_seed(config.seed, 1000));
  sim::EncodedObs obs = env.observation();

  TrainResult result{std::move(*policy), {}, 0};
  nn::Optimizer<float> opt(nn::OptimizerKind::adam, static_cast<float>(config.effective_online_lr()),
                           result.policy.model().trainable_params());
  TelemetryTracker tracker{config, hooks, result.telemetry};
  for (int64_t t = 0; t < config.online_steps; ++t) {
    const double eps = epsilon_at(config, t);
    const int action = result.policy.select_action(obs, SelectMode::epsilon_greedy, action_rng, eps);
    const double reward = env.step(action);
    sim::EncodedObs next_obs = env.observation();
    // Episodes end on time limits only, so values bootstrap through; done
    // stays false in the stored transition.
    buffer.push(data::Transition{obs, action, static_cast<float>(reward), next_obs, false, "online"});
    if (env.done()) {
      env.reset(derive_seed(config.seed, 1000 + ++episode));
      obs = env.observation();
    } else {
      obs = std::move(next_obs);
    }

    StepOutcome step;
    if (buffer.size() >= static_cast<size_t>(config.batch_size)) {
      const std::vector<data::Transition> sampled = buffer.sample(config.batch_size, sample_rng);
      std::vector<const data::Transition*> refs;
      refs.reserve(sampled.size());
      for (const data::Transition& tr : sampled) refs.push_back(&tr);
      const BatchMats batch = assemble(refs);
      step = gradient_step(result.policy, opt, batch, config, true, true, config.filter, adv_rng);
    }
    tracker.record(step);
    tracker.flush(result.policy, t + 1, config.online_steps, eps);
  }
  return result;
}

}  // namespace greenlaunch::agents
