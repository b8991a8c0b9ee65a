#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "greenlaunch/common/thread_pool.hpp"
#include "greenlaunch/eval/evaluate.hpp"
#include "greenlaunch/eval/experiment.hpp"
#include "greenlaunch/eval/svg.hpp"

using namespace greenlaunch;
using namespace greenlaunch::eval;

namespace {

namespace fs = std::filesystem;

sim::SimConfig micro_sim() {
  sim::SimConfig cfg;
  cfg.r_max = 4;
  cfg.ready_pool_size = 4;
  cfg.t_horizon = 6;
  cfg.episode_len = 60;
  return cfg;
}

agents::AgentConfig micro_agent() {
  agents::AgentConfig cfg;
  cfg.conv1_channels = 2;
  cfg.conv2_channels = 3;
  cfg.job_hidden = 4;
  cfg.merge_hidden = 8;
  cfg.feature_dim = 8;
  cfg.batch_size = 8;
  cfg.offline_steps = 30;
  cfg.online_steps = 60;
  cfg.pretrain_steps = 20;
  cfg.eval_every = 20;
  cfg.telemetry_every = 20;
  cfg.epsilon_decay_steps = 30;
  return cfg;
}

agents::Policy untrained_policy(const sim::SimConfig& sim_cfg, uint64_t seed) {
  sim::DatacenterEnv env(sim_cfg);
  agents::Policy policy(env.obs_shape(), env.n_actions(), micro_agent());
  policy.init(seed);
  return policy;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  return std::string(std::istreambuf_iterator<char>(is), {});
}

ExperimentSpec micro_spec(const std::string& out_dir) {
  ExperimentSpec spec;
  spec.experiments = {"offline_vs_bc"};
  spec.resources = {4};
  spec.seeds = {1, 2};
  spec.eval_rollouts = 2;
  spec.rollout_steps = 40;
  spec.dataset_rollouts = 4;
  spec.output_dir = out_dir;
  spec.agent = micro_agent();
  spec.sim = micro_sim();
  return spec;
}

}  // namespace

TEST_CASE("noop actor completes nothing") {
  data::NoOpActor actor;
  const EvalReport report = evaluate_actor(actor, micro_sim(), 3, 50, 7);
  CHECK(report.mean == 0.0);
  for (double v : report.per_rollout) CHECK(v == 0.0);
}

TEST_CASE("evaluation is deterministic for a fixed seed") {
  const sim::SimConfig cfg = micro_sim();
  data::HeuristicActor a1(heuristics::HeuristicKind::qos);
  data::HeuristicActor a2(heuristics::HeuristicKind::qos);
  const EvalReport r1 = evaluate_actor(a1, cfg, 4, 60, 11);
  const EvalReport r2 = evaluate_actor(a2, cfg, 4, 60, 11);
  CHECK(r1.per_rollout == r2.per_rollout);
  CHECK(r1.mean == r2.mean);
  CHECK(r1.ci95 == r2.ci95);
  CHECK(r1.config_hash == r2.config_hash);
}

TEST_CASE("report mean sits inside the per-rollout range") {
  sim::SimConfig cfg;
  cfg.episode_len = 200;
  data::HeuristicActor actor(heuristics::HeuristicKind::sjf);
  const EvalReport report = evaluate_actor(actor, cfg, 6, 200, 3);
  CHECK(report.mean >= report.min());
  CHECK(report.mean <= report.max());
  CHECK(report.ci95 >= 0.0);
  CHECK(report.per_rollout.size() == 6);
}

TEST_CASE("qos heuristic beats a random policy on job value") {
  sim::SimConfig cfg;
  cfg.episode_len = 2000;
  int wins = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    data::HeuristicActor qos(heuristics::HeuristicKind::qos);
    data::RandomActor random(derive_seed(seed, 5));
    const double qos_value = evaluate_actor(qos, cfg, 3, 2000, seed).mean;
    const double random_value = evaluate_actor(random, cfg, 3, 2000, seed).mean;
    if (qos_value > random_value) ++wins;
  }
  CHECK(wins == 5);
}

TEST_CASE("evaluate rejects bad arguments") {
  data::NoOpActor actor;
  CHECK_THROWS_AS(evaluate_actor(actor, micro_sim(), 0, 10, 1), ConfigError);
  CHECK_THROWS_AS(evaluate_actor(actor, micro_sim(), 2, 0, 1), ConfigError);
}

TEST_CASE("evaluate rejects a policy built for another environment") {
  const sim::SimConfig cfg = micro_sim();
  sim::SimConfig other = cfg;
  other.r_max = 6;
  const agents::Policy policy = untrained_policy(other, 1);
  CHECK_THROWS_AS(evaluate_policy(policy, cfg, 2, 10, 1), ShapeError);
}

TEST_CASE("a heuristic agrees with itself completely") {
  const sim::SimConfig cfg = micro_sim();
  for (heuristics::HeuristicKind h : heuristics::kAllHeuristics) {
    data::HeuristicActor probe(h);
    CHECK(actor_agreement(probe, h, cfg, 2, 60, 9) == 1.0);
  }
}

TEST_CASE("random actor agreement sits at one over the action count") {
  sim::SimConfig cfg;
  cfg.episode_len = 2000;
  REQUIRE(cfg.n_actions() == 12);
  data::RandomActor probe(99);
  const int n_rollouts = 5;
  const int steps = 2000;
  const double frac = actor_agreement(probe, heuristics::HeuristicKind::qos, cfg, n_rollouts, steps, 13);
  const double expected = 1.0 / 12.0;
  const double n = static_cast<double>(n_rollouts) * steps;
  const double sigma = std::sqrt(expected * (1.0 - expected) / n);
  CHECK(std::fabs(frac - expected) < 3.0 * sigma);
}

TEST_CASE("policy agreement lands in the unit interval") {
  const sim::SimConfig cfg = micro_sim();
  const agents::Policy policy = untrained_policy(cfg, 2);
  const double frac = action_agreement(policy, heuristics::HeuristicKind::sjf, cfg, 2, 50, 17);
  CHECK(frac >= 0.0);
  CHECK(frac <= 1.0);
}

TEST_CASE("line chart svg contains the series and labels") {
  const std::string path = (fs::temp_directory_path() / "chart_line.svg").string();
  std::vector<Series> series;
  series.push_back({"alpha", {10, 20, 50}, {1.0, 2.0, 2.5}, {0.1, 0.2, 0.1}});
  series.push_back({"beta", {10, 20, 50}, {0.5, 1.5, 3.0}, {}});
  write_line_chart(path, "demo chart", "resources", "value", series);
  const std::string svg = slurp(path);
  fs::remove(path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("alpha") != std::string::npos);
  CHECK(svg.find("beta") != std::string::npos);
  CHECK(svg.find("resources") != std::string::npos);
}

TEST_CASE("bar chart svg renders one rect per bar") {
  const std::string path = (fs::temp_directory_path() / "chart_bar.svg").string();
  write_bar_chart(path, "bars", "agreement", {{"bc_qos", 0.95, 0}, {"offline_qos", 0.91, 1}});
  const std::string svg = slurp(path);
  fs::remove(path);
  CHECK(svg.find("bc_qos") != std::string::npos);
  CHECK(svg.find("offline_qos") != std::string::npos);
  const size_t first = svg.find("<rect x=");
  REQUIRE(first != std::string::npos);
  CHECK(svg.find("<rect x=", first + 1) != std::string::npos);
}

TEST_CASE("results csv uses the long schema") {
  const std::string path = (fs::temp_directory_path() / "results_test.csv").string();
  write_results_csv(path, {{"offline_vs_bc", "bc_combo", 10, 3, "eval_value", 12.5},
                           {"offline_vs_bc", "offline_combo", 10, 3, "eval_value", 14.0}});
  const std::string text = slurp(path);
  fs::remove(path);
  CHECK(text ==
        "experiment,agent,resources,seed,metric,value\n"
        "offline_vs_bc,bc_combo,10,3,eval_value,12.5\n"
        "offline_vs_bc,offline_combo,10,3,eval_value,14\n");
}

TEST_CASE("summary csv aggregates seeds in first-seen order") {
  const std::string path = (fs::temp_directory_path() / "summary_test.csv").string();
  write_summary_csv(path, {{"agreement", "bc_qos", 10, 1, "agreement", 0.9},
                           {"agreement", "bc_qos", 10, 2, "agreement", 1.0},
                           {"agreement", "offline_qos", 10, 1, "agreement", 0.8}});
  const std::string text = slurp(path);
  fs::remove(path);
  CHECK(text.find("experiment,agent,resources,metric,n,mean,ci95\n") == 0);
  CHECK(text.find("agreement,bc_qos,10,agreement,2,0.95,") != std::string::npos);
  CHECK(text.find("agreement,offline_qos,10,agreement,1,0.8,0\n") != std::string::npos);
}

TEST_CASE("experiment spec round-trips through kv text") {
  ExperimentSpec spec = micro_spec("runs/x");
  spec.experiments = {"agreement", "launchpad"};
  const KvConfig kv = spec.to_kv();
  const ExperimentSpec back = ExperimentSpec::from_kv(kv);
  CHECK(back.experiments == spec.experiments);
  CHECK(back.resources == spec.resources);
  CHECK(back.seeds == spec.seeds);
  CHECK(back.eval_rollouts == spec.eval_rollouts);
  CHECK(back.rollout_steps == spec.rollout_steps);
  CHECK(back.dataset_rollouts == spec.dataset_rollouts);
  CHECK(back.output_dir == spec.output_dir);
  CHECK(back.agent.offline_steps == spec.agent.offline_steps);
  CHECK(back.agent.conv1_channels == spec.agent.conv1_channels);
  CHECK(back.sim.r_max == spec.sim.r_max);
  CHECK(back.sim.episode_len == spec.sim.episode_len);
}

TEST_CASE("experiment spec validation rejects bad input") {
  ExperimentSpec spec = micro_spec("runs/x");
  spec.experiments = {"figure_42"};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = micro_spec("runs/x");
  spec.seeds.clear();
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = micro_spec("runs/x");
  spec.resources = {0};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = micro_spec("runs/x");
  spec.eval_rollouts = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("paper scale raises rollout lengths and budgets") {
  ExperimentSpec spec = micro_spec("runs/x");
  spec.apply_paper_scale();
  CHECK(spec.rollout_steps == 100000);
  CHECK(std::find(spec.resources.begin(), spec.resources.end(), 100) != spec.resources.end());
  CHECK(spec.agent.offline_steps == 500000);
}

TEST_CASE("default experiment list covers all five suites") {
  ExperimentSpec spec;
  spec.experiments.clear();
  const std::vector<std::string> all = spec.enabled();
  REQUIRE(all.size() == 5);
  CHECK(all[0] == "bc_quality");
  CHECK(all[4] == "agreement");
}

TEST_CASE("micro experiment produces the full artifact set deterministically") {
  const std::string dir1 = (fs::temp_directory_path() / "exp_micro_a").string();
  const std::string dir2 = (fs::temp_directory_path() / "exp_micro_b").string();
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  const ExperimentResult r1 = run_experiment(micro_spec(dir1));
  CHECK(r1.complete());
  REQUIRE(fs::exists(r1.results_path));
  REQUIRE(fs::exists(r1.summary_path));
  REQUIRE(fs::exists(r1.meta_path));
  CHECK(fs::exists(dir1 + "/value_offline_vs_bc.svg"));

  // 2 agents x 2 seeds, one eval_value row each.
  CHECK(r1.rows.size() == 4);
  const std::string csv1 = slurp(r1.results_path);
  CHECK(csv1.find("experiment,agent,resources,seed,metric,value\n") == 0);
  CHECK(csv1.find("offline_vs_bc,bc_combo,4,1,eval_value,") != std::string::npos);
  CHECK(csv1.find("offline_vs_bc,offline_combo,4,2,eval_value,") != std::string::npos);

  const ExperimentResult r2 = run_experiment(micro_spec(dir2));
  CHECK(slurp(r2.results_path) == csv1);
  CHECK(slurp(r2.summary_path) == slurp(r1.summary_path));

  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("worker count respects the thread cap variable") {
  setenv("GREENLAUNCH_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  unsetenv("GREENLAUNCH_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("experiment results are identical across worker counts") {
  const std::string dir1 = (fs::temp_directory_path() / "exp_threads_1").string();
  const std::string dir2 = (fs::temp_directory_path() / "exp_threads_4").string();
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  setenv("GREENLAUNCH_THREADS", "1", 1);
  const ExperimentResult r1 = run_experiment(micro_spec(dir1));
  setenv("GREENLAUNCH_THREADS", "4", 1);
  const ExperimentResult r2 = run_experiment(micro_spec(dir2));
  unsetenv("GREENLAUNCH_THREADS");

  CHECK(slurp(r1.results_path) == slurp(r2.results_path));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("launchpad outcome reports targets and checkpointed crossings") {
  const sim::SimConfig cfg = micro_sim();
  agents::AgentConfig agent = micro_agent();
  data::HeuristicActor qos(heuristics::HeuristicKind::qos);
  const data::Dataset ds = data::collect_rollouts(qos, cfg, 3, 40, 77);

  const LaunchpadOutcome out = run_launchpad(cfg, agent, ds, 2, 40, 5);
  CHECK(std::isfinite(out.target_value));
  CHECK(std::isfinite(out.warm_final));
  CHECK(std::isfinite(out.cold_final));
  for (int64_t steps : {out.warm_steps, out.cold_steps}) {
    if (steps >= 0) {
      CHECK(steps % agent.eval_every == 0);
      CHECK(steps <= agent.online_steps);
    }
  }
}
