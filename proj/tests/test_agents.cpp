#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numeric>

#include "greenlaunch/agents/agent_config.hpp"
#include "greenlaunch/agents/losses.hpp"
#include "greenlaunch/agents/policy.hpp"
#include "greenlaunch/agents/train.hpp"
#include "greenlaunch/nn/optimizer.hpp"

using namespace greenlaunch;
using namespace greenlaunch::agents;

namespace {

AgentConfig tiny_agent_config() {
  AgentConfig cfg;
  cfg.conv1_channels = 2;
  cfg.conv2_channels = 3;
  cfg.job_hidden = 4;
  cfg.merge_hidden = 8;
  cfg.feature_dim = 8;
  cfg.batch_size = 16;
  cfg.eval_every = 1000000;
  cfg.telemetry_every = 1000000;
  return cfg;
}

sim::EncodedObs make_obs(std::vector<float> image, std::vector<float> jobs) {
  sim::EncodedObs obs;
  obs.image = std::move(image);
  obs.job_array = std::move(jobs);
  return obs;
}

// Distinct nonzero observations so no ReLU starts dead for either state.
sim::EncodedObs chain_s0() { return make_obs({0.8f}, {0.5f, -0.3f, 0.2f, -0.1f, 0.4f}); }
sim::EncodedObs chain_s1() { return make_obs({-0.6f}, {-0.4f, 0.6f, -0.2f, 0.3f, -0.5f}); }

// Two states, one useful action, deterministic cycle: s0 -(r=0)-> s1 -(r=1)-> s0.
data::Dataset chain_dataset() {
  data::Dataset ds;
  ds.shape = {1, 1, 5};
  ds.n_actions = 2;
  ds.config_hash = "chain";
  ds.transitions.push_back({chain_s0(), 0, 0.0f, chain_s1(), false, "chain"});
  ds.transitions.push_back({chain_s1(), 0, 1.0f, chain_s0(), false, "chain"});
  return ds;
}

float min_q_unnorm(const Policy& policy, const sim::EncodedObs& obs, int action) {
  nn::Mat<float> image(1, static_cast<int>(obs.image.size()));
  nn::Mat<float> jobs(1, static_cast<int>(obs.job_array.size()));
  std::copy(obs.image.begin(), obs.image.end(), image.v.begin());
  std::copy(obs.job_array.begin(), obs.job_array.end(), jobs.v.begin());
  nn::AgentModel<float>& model = const_cast<Policy&>(policy).model();
  const nn::Mat<float>& feat = model.encoder().forward(image, jobs, false);
  std::vector<const nn::Mat<float>*> qs;
  for (int e = 0; e < model.n_critics(); ++e) qs.push_back(&model.critic(e).forward(feat, false));
  const nn::Mat<float> qmin = min_ensemble(qs);
  return policy.popart().stats().sigma * qmin.at(0, action) + policy.popart().stats().mu;
}

std::vector<float> policy_probs(const Policy& policy, const sim::EncodedObs& obs) {
  const std::vector<float> raw = policy.logits(obs);
  nn::Mat<float> lm(1, static_cast<int>(raw.size()));
  lm.v = raw;
  nn::Mat<float> probs;
  softmax_rows(lm, probs);
  return probs.v;
}

// Stateless one-armed-bandit dynamics: reward 1 for the last action, else 0.
class BanditEnv : public TrainEnv {
 public:
  explicit BanditEnv(int n_actions) : n_actions_(n_actions) {}
  sim::ObsShape obs_shape() const override { return {2, 2, 5}; }
  int n_actions() const override { return n_actions_; }
  sim::EncodedObs observation() const override {
    return make_obs({0.5f, -0.5f, 0.25f, 1.0f}, {0.1f, 0.2f, 0.3f, 0.4f, 0.5f});
  }
  double step(int action_id) override {
    counts.resize(static_cast<size_t>(n_actions_), 0);
    ++counts[static_cast<size_t>(action_id)];
    return action_id == n_actions_ - 1 ? 1.0 : 0.0;
  }
  bool done() const override { return false; }
  void reset(uint64_t) override {}

  std::vector<int64_t> counts;

 private:
  int n_actions_;
};

}  // namespace

TEST_CASE("filter values follow their definitions") {
  CHECK(filter_value(FilterKind::uniform, -3.0) == 1.0);
  CHECK(filter_value(FilterKind::uniform, 42.0) == 1.0);
  CHECK(filter_value(FilterKind::binary, 0.0) == 0.0);
  CHECK(filter_value(FilterKind::binary, -1e-9) == 0.0);
  CHECK(filter_value(FilterKind::binary, 1e-9) == 1.0);
  CHECK(filter_value(FilterKind::exp, std::log(2.0), 1.0, 20.0) == doctest::Approx(2.0));
  CHECK(filter_value(FilterKind::exp, 100.0, 1.0, 20.0) == 20.0);
  CHECK(filter_value(FilterKind::exp, 2.0, 2.0, 20.0) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("filter names round-trip and reject junk") {
  for (FilterKind k : {FilterKind::uniform, FilterKind::binary, FilterKind::exp}) {
    CHECK(filter_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(filter_from_string("Binary"), ConfigError);
  CHECK_THROWS_AS(filter_from_string(""), ConfigError);
}

TEST_CASE("softmax stays normalized under extreme logits") {
  nn::Mat<double> logits(3, 4);
  logits.v = {1000.0, 999.0, 998.0, 0.0, -1000.0, -1000.0, -1000.0, -1000.0, 0.3, -0.2, 0.7, 0.1};
  nn::Mat<double> probs;
  softmax_rows(logits, probs);
  for (int r = 0; r < 3; ++r) {
    double sum = 0.0;
    for (int c = 0; c < 4; ++c) {
      CHECK(std::isfinite(probs.at(r, c)));
      sum += probs.at(r, c);
    }
    CHECK(std::fabs(sum - 1.0) < 1e-6);
  }
  nn::Mat<double> logp;
  log_softmax_rows(logits, logp);
  for (std::size_t i = 0; i < logp.v.size(); ++i) {
    CHECK(std::isfinite(logp.v[i]));
    CHECK(logp.v[i] <= 0.0);
  }
  CHECK(probs.at(2, 2) == doctest::Approx(std::exp(logp.at(2, 2))));
}

TEST_CASE("exact advantage matches a hand-computed example") {
  const double q[] = {1.0, 2.0, 3.0};
  const double p[] = {0.2, 0.3, 0.5};
  const double adv = estimate_advantage<double>(q, p, 3, 2, 0, nullptr);
  CHECK(adv == doctest::Approx(3.0 - 2.3));
  CHECK(estimate_advantage<double>(q, p, 3, 0, 0, nullptr) == doctest::Approx(1.0 - 2.3));
}

TEST_CASE("constant q gives zero advantage in sampled mode") {
  const double q[] = {1.5, 1.5, 1.5, 1.5};
  const double p[] = {0.1, 0.2, 0.3, 0.4};
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(estimate_advantage<double>(q, p, 4, trial % 4, 4, &rng) == 0.0);
  }
  CHECK(estimate_advantage<double>(q, p, 4, 1, 0, nullptr) == doctest::Approx(0.0));
}

TEST_CASE("sampled advantage agrees with the exact expectation within monte carlo error") {
  Rng init(3);
  const int n = 6;
  std::vector<double> q(n), p_raw(n);
  for (double& v : q) v = init.normal(0.0, 2.0);
  double sum = 0.0;
  for (double& v : p_raw) {
    v = std::exp(init.normal(0.0, 0.5));
    sum += v;
  }
  for (double& v : p_raw) v /= sum;

  const double exact = estimate_advantage<double>(q.data(), p_raw.data(), n, 2, 0, nullptr);
  double mean_q = 0.0, var_q = 0.0;
  for (int a = 0; a < n; ++a) mean_q += p_raw[a] * q[a];
  for (int a = 0; a < n; ++a) var_q += p_raw[a] * (q[a] - mean_q) * (q[a] - mean_q);

  const int k = 256;
  const int trials = 200;
  Rng rng(11);
  double acc = 0.0;
  for (int t = 0; t < trials; ++t) acc += estimate_advantage<double>(q.data(), p_raw.data(), n, 2, k, &rng);
  acc /= trials;
  const double se = std::sqrt(var_q / (static_cast<double>(k) * trials));
  CHECK(std::fabs(acc - exact) < 3.0 * se + 1e-12);
}

TEST_CASE("uniform filter loss is bitwise-identical to cross entropy") {
  Rng rng(19);
  const int B = 32, A = 7;
  nn::Mat<float> logits(B, A);
  for (float& v : logits.v) v = static_cast<float>(rng.normal(0.0, 2.0));
  std::vector<int> actions(B);
  for (int& a : actions) a = static_cast<int>(rng.uniform_u64(A));

  std::vector<float> weights(B, 1.0f);
  const ActorLoss<float> filtered = offline_actor_loss(logits, actions, weights);
  const ActorLoss<float> ce = cross_entropy_loss(logits, actions);
  CHECK(filtered.loss == ce.loss);
  REQUIRE(filtered.dlogits.v.size() == ce.dlogits.v.size());
  for (std::size_t i = 0; i < ce.dlogits.v.size(); ++i) {
    CHECK(filtered.dlogits.v[i] == ce.dlogits.v[i]);
  }
}

TEST_CASE("uniform filter gradient is bitwise-identical to cross entropy through the whole model") {
  AgentConfig cfg = tiny_agent_config();
  const sim::ObsShape shape{3, 4, 10};
  Policy pa(shape, 5, cfg);
  pa.init(123);
  Policy pb = pa.clone();

  Rng rng(77);
  const int B = 16;
  std::vector<sim::EncodedObs> obs(B);
  std::vector<const sim::EncodedObs*> refs;
  std::vector<int> actions(B);
  for (int i = 0; i < B; ++i) {
    std::vector<float> img(12), job(10);
    for (float& v : img) v = static_cast<float>(rng.normal(0.0, 1.0));
    for (float& v : job) v = static_cast<float>(rng.normal(0.0, 1.0));
    obs[i] = make_obs(std::move(img), std::move(job));
    refs.push_back(&obs[i]);
    actions[i] = static_cast<int>(rng.uniform_u64(5));
  }
  nn::Mat<float> image, jobs;
  Policy::encode_batch(refs, image, jobs);

  auto grads_with = [&](Policy& p, bool use_filter_path) {
    nn::AgentModel<float>& m = p.model();
    m.zero_grad();
    const nn::Mat<float>& feat = m.encoder().forward(image, jobs, true);
    const nn::Mat<float>& logits = m.actor().forward(feat, true);
    ActorLoss<float> loss;
    if (use_filter_path) {
      std::vector<float> weights(B, 1.0f);
      loss = offline_actor_loss(logits, actions, weights);
    } else {
      loss = cross_entropy_loss(logits, actions);
    }
    nn::Mat<float> dfeat = m.actor().backward(loss.dlogits);
    m.encoder().backward(dfeat);
    std::vector<std::vector<float>> out;
    for (nn::ParamBlock<float>* b : m.trainable_params()) out.push_back(b->g);
    return out;
  };

  const auto ga = grads_with(pa, true);
  const auto gb = grads_with(pb, false);
  REQUIRE(ga.size() == gb.size());
  for (std::size_t i = 0; i < ga.size(); ++i) {
    REQUIRE(ga[i].size() == gb[i].size());
    for (std::size_t j = 0; j < ga[i].size(); ++j) CHECK(ga[i][j] == gb[i][j]);
  }
}

TEST_CASE("all-zero filter weights produce a zero gradient") {
  Rng rng(5);
  nn::Mat<float> logits(8, 4);
  for (float& v : logits.v) v = static_cast<float>(rng.normal(0.0, 1.0));
  std::vector<int> actions(8, 1);
  std::vector<float> weights(8, 0.0f);
  const ActorLoss<float> loss = offline_actor_loss(logits, actions, weights);
  CHECK(loss.loss == 0.0f);
  for (float v : loss.dlogits.v) CHECK(v == 0.0f);
}

TEST_CASE("offline loss on a single repeated action concentrates the policy") {
  // Direct gradient descent on free logits stands in for the actor head.
  nn::ParamBlock<float> logits_block("logits", {3});
  nn::Optimizer<float> opt(nn::OptimizerKind::adam, 0.05f, {&logits_block});
  std::vector<int> actions(4, 0);
  std::vector<float> weights(4, 1.0f);
  for (int step = 0; step < 500; ++step) {
    nn::Mat<float> logits(4, 3);
    for (int i = 0; i < 4; ++i) {
      for (int a = 0; a < 3; ++a) logits.at(i, a) = logits_block.w[a];
    }
    const ActorLoss<float> loss = offline_actor_loss(logits, actions, weights);
    opt.zero_grad();
    for (int i = 0; i < 4; ++i) {
      for (int a = 0; a < 3; ++a) logits_block.g[a] += loss.dlogits.at(i, a);
    }
    opt.step();
  }
  nn::Mat<float> lm(1, 3);
  for (int a = 0; a < 3; ++a) lm.v[a] = logits_block.w[a];
  nn::Mat<float> probs;
  softmax_rows(lm, probs);
  CHECK(probs.v[0] > 0.99f);
}

TEST_CASE("online actor loss prefers the higher q action") {
  nn::ParamBlock<double> logits_block("logits", {2});
  nn::Optimizer<double> opt(nn::OptimizerKind::sgd, 0.5, {&logits_block});
  nn::Mat<double> q(1, 2);
  q.v = {0.0, 1.0};
  double prev_p1 = 0.5;
  for (int step = 0; step < 50; ++step) {
    nn::Mat<double> logits(1, 2);
    logits.v = logits_block.w;
    const ActorLoss<double> loss = online_actor_loss(logits, q, 0.0);
    opt.zero_grad();
    logits_block.g = loss.dlogits.v;
    opt.step();
    nn::Mat<double> lm(1, 2);
    lm.v = logits_block.w;
    nn::Mat<double> probs;
    softmax_rows(lm, probs);
    CHECK(probs.v[1] > prev_p1);
    prev_p1 = probs.v[1];
  }
  CHECK(prev_p1 > 0.9);
}

TEST_CASE("online actor loss with constant q reduces to the entropy gradient") {
  nn::Mat<double> logits(2, 3);
  logits.v = {0.5, -1.0, 2.0, 0.0, 0.0, 1.0};
  nn::Mat<double> q_const(2, 3);
  q_const.fill(3.7);
  nn::Mat<double> q_zero(2, 3);

  const double alpha = 0.25;
  const ActorLoss<double> with_q = online_actor_loss(logits, q_const, alpha);
  const ActorLoss<double> entropy_only = online_actor_loss(logits, q_zero, 1.0);
  for (std::size_t i = 0; i < with_q.dlogits.v.size(); ++i) {
    CHECK(with_q.dlogits.v[i] == doctest::Approx(alpha * entropy_only.dlogits.v[i]).epsilon(1e-9));
  }
}

TEST_CASE("entropy gradient pushes toward the uniform policy") {
  nn::Mat<double> logits(1, 2);
  logits.v = {2.0, 0.0};
  nn::Mat<double> q(1, 2);
  const ActorLoss<double> loss = online_actor_loss(logits, q, 1.0);
  CHECK(loss.dlogits.v[0] > 0.0);
  CHECK(loss.dlogits.v[1] < 0.0);
}

TEST_CASE("critic loss matches a hand example") {
  nn::Mat<float> q1(1, 2);
  q1.v = {1.0f, 2.0f};
  nn::Mat<float> q2(1, 2);
  q2.v = {0.0f, -1.0f};
  const std::vector<int> actions{0};
  const std::vector<float> y{0.5f};
  const CriticLoss<float> loss = critic_loss<float>({&q1, &q2}, actions, y);
  CHECK(loss.loss == doctest::Approx(0.25 + 0.25));
  CHECK(loss.dq[0].at(0, 0) == doctest::Approx(1.0));
  CHECK(loss.dq[0].at(0, 1) == 0.0f);
  CHECK(loss.dq[1].at(0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("min ensemble takes the elementwise minimum") {
  nn::Mat<float> a(2, 2);
  a.v = {1, 5, -2, 0};
  nn::Mat<float> b(2, 2);
  b.v = {2, 3, -1, -4};
  const nn::Mat<float> m = min_ensemble<float>({&a, &b});
  CHECK(m.v == std::vector<float>{1, 3, -2, -4});
}

TEST_CASE("gamma zero regression recovers per state-action mean rewards") {
  // Hand-rolled training loop over fixed transitions so the learning rate can
  // decay; at gamma 0 the targets are plain rewards.
  AgentConfig cfg = tiny_agent_config();
  const sim::ObsShape shape{1, 1, 5};
  Policy policy(shape, 2, cfg);
  policy.init(9);
  nn::AgentModel<float>& model = policy.model();
  nn::Optimizer<float> opt(nn::OptimizerKind::adam, 3e-3f, model.trainable_params());

  const sim::EncodedObs s0 = chain_s0();
  const sim::EncodedObs s1 = chain_s1();
  struct Row {
    const sim::EncodedObs* obs;
    int action;
    float reward;
  };
  // (s0, a0) has stochastic reward {0, 1}; (s0, a1) and (s1, a0) are fixed.
  const std::vector<Row> rows = {{&s0, 0, 0.0f}, {&s0, 0, 1.0f}, {&s0, 1, 2.0f}, {&s1, 0, -1.0f}};

  std::vector<const sim::EncodedObs*> refs;
  std::vector<int> actions;
  std::vector<float> y;
  for (const Row& r : rows) {
    refs.push_back(r.obs);
    actions.push_back(r.action);
    y.push_back(r.reward);
  }
  nn::Mat<float> image, jobs;
  Policy::encode_batch(refs, image, jobs);

  for (int step = 0; step < 12000; ++step) {
    if (step == 6000) opt.set_learning_rate(3e-4f);
    if (step == 9000) opt.set_learning_rate(5e-5f);
    std::vector<nn::Dense<float>*> heads;
    for (int e = 0; e < model.n_critics(); ++e) {
      heads.push_back(&model.critic(e));
      heads.push_back(&model.target_critic(e));
    }
    const std::vector<float> y_norm = nn::popart_update_and_normalize(policy.popart(), heads, y);
    const nn::Mat<float>& feat = model.encoder().forward(image, jobs, true);
    std::vector<const nn::Mat<float>*> q_refs;
    for (int e = 0; e < model.n_critics(); ++e) q_refs.push_back(&model.critic(e).forward(feat, true));
    const CriticLoss<float> loss = critic_loss(q_refs, actions, y_norm);
    opt.zero_grad();
    nn::Mat<float> dfeat(image.rows, model.config().feature_dim);
    for (int e = 0; e < model.n_critics(); ++e) {
      nn::Mat<float> d = model.critic(e).backward(loss.dq[e]);
      for (std::size_t i = 0; i < dfeat.v.size(); ++i) dfeat.v[i] += d.v[i];
    }
    model.encoder().backward(dfeat);
    opt.step();
  }

  CHECK(std::fabs(min_q_unnorm(policy, s0, 0) - 0.5) < 1e-3);
  CHECK(std::fabs(min_q_unnorm(policy, s0, 1) - 2.0) < 1e-3);
  CHECK(std::fabs(min_q_unnorm(policy, s1, 0) - (-1.0)) < 1e-3);
}

TEST_CASE("offline training solves the two-state chain bellman equations") {
  data::Dataset ds = chain_dataset();
  AgentConfig cfg = tiny_agent_config();
  cfg.gamma = 0.9;
  cfg.lr = 3e-3;
  cfg.tau = 0.01;
  cfg.filter = FilterKind::uniform;
  cfg.offline_steps = 10000;
  cfg.seed = 4;
  const TrainResult result = train_offline(ds, cfg, false);

  // Q(s0) = 0 + 0.9 Q(s1); Q(s1) = 1 + 0.9 Q(s0).
  const double q1 = 1.0 / (1.0 - 0.81);
  const double q0 = 0.9 * q1;
  CHECK(std::fabs(min_q_unnorm(result.policy, chain_s0(), 0) - q0) < 1e-2);
  CHECK(std::fabs(min_q_unnorm(result.policy, chain_s1(), 0) - q1) < 1e-2);
  CHECK(policy_probs(result.policy, chain_s0())[0] > 0.99f);
}

TEST_CASE("offline training rejects an empty dataset") {
  data::Dataset ds;
  ds.shape = {1, 1, 5};
  ds.n_actions = 2;
  CHECK_THROWS_AS(train_offline(ds, tiny_agent_config(), true), ConfigError);
}

TEST_CASE("zero offline steps return the untouched initialization") {
  data::Dataset ds = chain_dataset();
  AgentConfig cfg = tiny_agent_config();
  cfg.offline_steps = 0;
  cfg.seed = 21;
  TrainResult result = train_offline(ds, cfg, true);

  Policy fresh(ds.shape, ds.n_actions, cfg);
  fresh.init(cfg.seed);
  auto a = result.policy.model().all_params();
  auto b = fresh.model().all_params();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i]->w == b[i]->w);
  CHECK(result.telemetry.empty());
}

TEST_CASE("bc mode leaves critics and targets untouched") {
  data::Dataset ds = chain_dataset();
  AgentConfig cfg = tiny_agent_config();
  cfg.offline_steps = 50;
  cfg.seed = 33;
  TrainResult result = train_offline(ds, cfg, true);

  Policy fresh(ds.shape, ds.n_actions, cfg);
  fresh.init(cfg.seed);
  CHECK(result.policy.model().critic(0).weight().w == fresh.model().critic(0).weight().w);
  CHECK(result.policy.model().target_critic(0).weight().w == fresh.model().target_critic(0).weight().w);
  // Target encoder must not follow the trained online encoder without polyak.
  bool encoder_moved = false;
  auto trained = result.policy.model().encoder().params();
  auto init = fresh.model().encoder().params();
  for (std::size_t i = 0; i < trained.size(); ++i) {
    if (trained[i]->w != init[i]->w) encoder_moved = true;
  }
  CHECK(encoder_moved);
  auto t_trained = result.policy.model().target_encoder().params();
  auto t_init = fresh.model().target_encoder().params();
  for (std::size_t i = 0; i < t_trained.size(); ++i) CHECK(t_trained[i]->w == t_init[i]->w);
}

TEST_CASE("offline training touches targets only through polyak") {
  data::Dataset ds = chain_dataset();
  AgentConfig cfg = tiny_agent_config();
  cfg.offline_steps = 25;
  cfg.tau = 0.5;
  cfg.seed = 14;
  TrainResult result = train_offline(ds, cfg, false);

  // With a large tau the target should sit strictly between init and online.
  Policy fresh(ds.shape, ds.n_actions, cfg);
  fresh.init(cfg.seed);
  const std::vector<float>& init_w = fresh.model().critic(0).weight().w;
  const std::vector<float>& online_w = result.policy.model().critic(0).weight().w;
  const std::vector<float>& target_w = result.policy.model().target_critic(0).weight().w;
  bool between = false;
  for (std::size_t i = 0; i < init_w.size(); ++i) {
    if (target_w[i] != init_w[i] && target_w[i] != online_w[i]) between = true;
  }
  CHECK(between);
}

TEST_CASE("epsilon schedule is linear then flat") {
  AgentConfig cfg;
  cfg.online_steps = 1000;
  cfg.epsilon_decay_steps = 0;  // derives 100
  CHECK(epsilon_at(cfg, 0) == doctest::Approx(1.0));
  CHECK(epsilon_at(cfg, 50) == doctest::Approx(0.525));
  CHECK(epsilon_at(cfg, 100) == doctest::Approx(0.05));
  CHECK(epsilon_at(cfg, 900) == doctest::Approx(0.05));
}

TEST_CASE("online training solves a bandit") {
  BanditEnv env(2);
  AgentConfig cfg = tiny_agent_config();
  cfg.online_steps = 5000;
  cfg.lr = 1e-3;
  cfg.tau = 0.01;
  cfg.buffer_capacity = 10000;
  cfg.epsilon_decay_steps = 500;
  cfg.seed = 6;
  TrainResult result = train_online(env, cfg);

  Rng rng(1);
  const int greedy = result.policy.select_action(env.observation(), SelectMode::greedy, rng);
  CHECK(greedy == 1);
  const std::vector<float> probs = policy_probs(result.policy, env.observation());
  CHECK(probs[1] > 0.8f);
}

TEST_CASE("epsilon one explores uniformly") {
  BanditEnv env(4);
  AgentConfig cfg = tiny_agent_config();
  cfg.online_steps = 8000;
  cfg.epsilon_start = 1.0;
  cfg.epsilon_end = 1.0;
  cfg.seed = 77;
  train_online(env, cfg);

  const double expected = 8000.0 / 4.0;
  for (int64_t c : env.counts) {
    // 4 sigma of a binomial(8000, 1/4)
    CHECK(std::fabs(static_cast<double>(c) - expected) < 4.0 * std::sqrt(8000.0 * 0.25 * 0.75));
  }
}

TEST_CASE("warm start copies parameters and prefills the buffer") {
  data::Dataset ds = chain_dataset();
  AgentConfig cfg = tiny_agent_config();
  cfg.offline_steps = 30;
  cfg.seed = 8;
  TrainResult offline = train_offline(ds, cfg, true);

  BanditEnv env(2);
  cfg.online_steps = 0;
  WarmStart warm;
  warm.policy = &offline.policy;
  warm.buffer_fill = &ds;
  TrainResult online = train_online(env, cfg, warm);
  auto a = online.policy.model().all_params();
  auto b = offline.policy.model().all_params();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i]->w == b[i]->w);

  cfg.warm_start_params = false;
  TrainResult cold = train_online(env, cfg, warm);
  bool differs = false;
  auto c = cold.policy.model().all_params();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i]->w != b[i]->w) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("warm start with mismatched action space is rejected") {
  data::Dataset ds = chain_dataset();
  AgentConfig cfg = tiny_agent_config();
  cfg.offline_steps = 1;
  TrainResult offline = train_offline(ds, cfg, true);
  BanditEnv env(4);
  cfg.online_steps = 1;
  WarmStart warm;
  warm.policy = &offline.policy;
  CHECK_THROWS_AS(train_online(env, cfg, warm), ShapeError);
}

TEST_CASE("select action modes behave as specified") {
  AgentConfig cfg = tiny_agent_config();
  const sim::ObsShape shape{2, 2, 5};
  Policy policy(shape, 4, cfg);
  policy.init(3);
  const sim::EncodedObs obs = make_obs({0.1f, 0.2f, 0.3f, 0.4f}, {0, 0, 0, 0, 0});

  // Force known logits through the actor head bias.
  nn::Dense<float>& actor = policy.model().actor();
  for (float& w : actor.weight().w) w = 0.0f;
  actor.bias().w = {0.0f, 5.0f, 1.0f, 2.0f};
  Rng rng(5);
  CHECK(policy.select_action(obs, SelectMode::greedy, rng) == 1);
  CHECK(policy.select_action(obs, SelectMode::epsilon_greedy, rng, 0.0) == 1);

  // Uniform logits: sampling must be uniform within chi-square bounds.
  actor.bias().w = {0.0f, 0.0f, 0.0f, 0.0f};
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 10000; ++i) ++counts[static_cast<size_t>(policy.select_action(obs, SelectMode::sample, rng))];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 2500.0) * (c - 2500.0) / 2500.0;
  CHECK(chi2 < 16.27);  // chi-square(3) at p=0.001
}

TEST_CASE("policy round-trips through its checkpoint file") {
  AgentConfig cfg = tiny_agent_config();
  const sim::ObsShape shape{3, 4, 10};
  Policy policy(shape, 5, cfg);
  policy.init(44);
  for (int i = 0; i < 10; ++i) policy.popart().update({static_cast<float>(i)});

  const std::string path = (std::filesystem::temp_directory_path() / "policy_roundtrip.ckpt").string();
  policy.save(path);
  Policy loaded = Policy::load(path);
  std::filesystem::remove(path);

  CHECK(loaded.obs_shape() == shape);
  CHECK(loaded.n_actions() == 5);
  auto a = policy.model().all_params();
  auto b = loaded.model().all_params();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i]->w == b[i]->w);
  CHECK(loaded.popart().raw_mu() == policy.popart().raw_mu());

  const sim::EncodedObs obs = make_obs({0.1f, -0.2f, 0.3f, 0.0f, 0.5f, -0.6f, 0.7f, 0.1f, 0.2f, -0.3f, 0.4f, 0.9f},
                                       {0.1f, 0, 0.3f, 0, 0.5f, 0, 0.7f, 0, 0.9f, 0});
  CHECK(policy.logits(obs) == loaded.logits(obs));
}

TEST_CASE("policy probabilities normalize across random states") {
  AgentConfig cfg = tiny_agent_config();
  const sim::ObsShape shape{4, 3, 15};
  Policy policy(shape, 6, cfg);
  policy.init(10);
  Rng rng(20);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<float> img(12), job(15);
    for (float& v : img) v = static_cast<float>(rng.normal(0.0, 1.0));
    for (float& v : job) v = static_cast<float>(rng.normal(0.0, 1.0));
    const std::vector<float> probs = policy_probs(policy, make_obs(std::move(img), std::move(job)));
    double sum = 0.0;
    for (float p : probs) sum += p;
    CHECK(std::fabs(sum - 1.0) < 1e-6);
  }
}

TEST_CASE("telemetry csv renders missing values as empty fields") {
  std::vector<TelemetryRow> rows(2);
  rows[0].step = 100;
  rows[0].actor_loss = 0.5;
  rows[0].critic_loss = std::numeric_limits<double>::quiet_NaN();
  rows[0].epsilon = 1.0;
  rows[1].step = 200;
  rows[1].actor_loss = 0.25;
  rows[1].critic_loss = 0.125;
  rows[1].eval_value = 42.0;
  rows[1].agreement = 0.75;
  rows[1].epsilon = 0.5;

  const std::string path = (std::filesystem::temp_directory_path() / "telemetry_test.csv").string();
  write_telemetry_csv(path, rows);
  std::ifstream is(path);
  std::string line;
  std::getline(is, line);
  CHECK(line == "step,actor_loss,critic_loss,eval_value,agreement,epsilon");
  std::getline(is, line);
  CHECK(line == "100,0.5,,,,1");
  std::getline(is, line);
  CHECK(line == "200,0.25,0.125,42,0.75,0.5");
  is.close();
  std::filesystem::remove(path);
}

TEST_CASE("training emits telemetry and fires hooks on cadence") {
  data::Dataset ds = chain_dataset();
  AgentConfig cfg = tiny_agent_config();
  cfg.offline_steps = 250;
  cfg.telemetry_every = 50;
  cfg.eval_every = 100;
  int evals = 0;
  int checkpoints = 0;
  TrainHooks hooks;
  hooks.eval_value = [&](const Policy&) {
    ++evals;
    return 1.5;
  };
  hooks.checkpoint = [&](const Policy&, int64_t) { ++checkpoints; };
  TrainResult result = train_offline(ds, cfg, true, hooks);

  REQUIRE(result.telemetry.size() == 5);
  CHECK(result.telemetry[0].step == 50);
  CHECK(result.telemetry.back().step == 250);
  // Evals at 100, 200 and the final step 250.
  CHECK(evals == 3);
  CHECK(checkpoints == 3);
  CHECK(std::isnan(result.telemetry[0].eval_value));
  CHECK(result.telemetry[1].eval_value == 1.5);
}

TEST_CASE("agent config round-trips through kv text") {
  AgentConfig cfg;
  cfg.lr = 1e-3;
  cfg.filter = FilterKind::exp;
  cfg.advantage_samples = 0;
  cfg.offline_steps = 123;
  cfg.warm_start_buffer = false;
  const KvConfig kv = cfg.to_kv();
  const AgentConfig back = AgentConfig::from_kv(kv);
  CHECK(back.lr == cfg.lr);
  CHECK(back.filter == FilterKind::exp);
  CHECK(back.advantage_samples == 0);
  CHECK(back.offline_steps == 123);
  CHECK(back.warm_start_buffer == false);
  CHECK(back.batch_size == cfg.batch_size);
}

TEST_CASE("paper scale preset raises the step budgets") {
  AgentConfig cfg;
  cfg.apply_paper_scale();
  CHECK(cfg.offline_steps == 500000);
  CHECK(cfg.online_steps == 1000000);
  CHECK(cfg.pretrain_steps == 50000);

  KvConfig kv;
  kv.set("paper_scale", "true");
  CHECK(AgentConfig::from_kv(kv).offline_steps == 500000);
}

TEST_CASE("agent config validation rejects bad values") {
  AgentConfig cfg;
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = AgentConfig{};
  cfg.lr = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = AgentConfig{};
  cfg.advantage_samples = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = AgentConfig{};
  cfg.epsilon_start = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
