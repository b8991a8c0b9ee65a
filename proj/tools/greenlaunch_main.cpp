#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "greenlaunch/agents/train.hpp"
#include "greenlaunch/common/thread_pool.hpp"
#include "greenlaunch/data/collect.hpp"
#include "greenlaunch/data/dataset_io.hpp"
#include "greenlaunch/eval/evaluate.hpp"
#include "greenlaunch/eval/experiment.hpp"
#include "greenlaunch/sim/config.hpp"

namespace {

using namespace greenlaunch;

struct SimArgs {
  std::string config_path;
  int resources = 0;

  sim::SimConfig resolve() const {
    sim::SimConfig cfg = config_path.empty() ? sim::SimConfig{} : sim::SimConfig::load(config_path);
    if (resources > 0) cfg.r_max = resources;
    cfg.validate();
    return cfg;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--sim-config", config_path, "simulator config file (key = value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--resources", resources, "override the resource count r_max");
  }
};

std::unique_ptr<data::Actor> make_actor(const std::string& policy, uint64_t seed) {
  if (policy == "random") return std::make_unique<data::RandomActor>(seed);
  return std::make_unique<data::HeuristicActor>(heuristics::heuristic_from_string(policy));
}

void print_report(const eval::EvalReport& report) {
  std::printf("rollouts:");
  for (double v : report.per_rollout) std::printf(" %.10g", v);
  std::printf("\n");
  std::printf("mean %.10g  ci95 %.10g  n %zu\n", report.mean, report.ci95, report.per_rollout.size());
  std::printf("config %s  seed %llu  %s\n", report.config_hash.c_str(),
              static_cast<unsigned long long>(report.seed), report.version.c_str());
}

int cmd_generate_data(const std::string& policy, const std::string& out, const SimArgs& sim_args,
                      int rollouts, int steps, uint64_t seed) {
  const sim::SimConfig cfg = sim_args.resolve();
  data::Dataset ds;
  if (policy == "combo") {
    ds = data::collect_combo_rollouts(cfg, rollouts, steps, seed);
  } else {
    auto actor = make_actor(policy, seed);
    ds = data::collect_rollouts(*actor, cfg, rollouts, steps, seed);
  }
  if (const auto dir = std::filesystem::path(out).parent_path(); !dir.empty()) {
    std::filesystem::create_directories(dir);
  }
  data::save_dataset(ds, out);
  std::printf("wrote %zu transitions (%d rollouts x %d steps, policy %s, resources %d) to %s\n",
              ds.size(), rollouts, steps, policy.c_str(), cfg.r_max, out.c_str());
  std::printf("config %s\n", ds.config_hash.c_str());
  return 0;
}

struct TrainArgs {
  std::string algo;
  std::string data_path;
  std::string out_dir = "runs/train";
  std::string agent_config_path;
  std::string filter;
  int64_t steps = 0;
  uint64_t seed = 0;
  bool paper_scale = false;
  SimArgs sim;
};

agents::TrainHooks eval_hooks(const sim::SimConfig& sim_cfg, uint64_t seed, bool& enabled) {
  agents::TrainHooks hooks;
  sim::DatacenterEnv probe(sim_cfg);
  const sim::ObsShape shape = probe.obs_shape();
  const int n_actions = probe.n_actions();
  enabled = true;
  hooks.eval_value = [sim_cfg, shape, n_actions, seed](const agents::Policy& policy) {
    if (!(policy.obs_shape() == shape) || policy.n_actions() != n_actions) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return eval::evaluate_policy(policy, sim_cfg, 5, sim_cfg.episode_len, derive_seed(seed, 40)).mean;
  };
  return hooks;
}

int cmd_train(const TrainArgs& args) {
  agents::AgentConfig cfg =
      args.agent_config_path.empty() ? agents::AgentConfig{} : agents::AgentConfig::load(args.agent_config_path);
  if (!args.filter.empty()) cfg.filter = agents::filter_from_string(args.filter);
  if (args.seed != 0) cfg.seed = args.seed;
  if (args.paper_scale) cfg.apply_paper_scale();
  if (args.steps > 0) {
    if (args.algo == "bc" || args.algo == "offline") {
      cfg.offline_steps = args.steps;
    } else {
      cfg.online_steps = args.steps;
    }
  }
  cfg.validate();
  const sim::SimConfig sim_cfg = args.sim.resolve();

  const bool needs_data = args.algo != "online";
  if (needs_data && args.data_path.empty()) {
    throw ConfigError("--data is required for algo " + args.algo);
  }
  if (!needs_data && !args.data_path.empty()) {
    throw ConfigError("--data only applies to bc, offline, and offline-online");
  }

  std::optional<data::Dataset> dataset;
  if (needs_data) {
    data::LoadResult loaded = data::load_dataset(args.data_path);
    for (const std::string& w : loaded.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    dataset.emplace(std::move(loaded.dataset));
    if (dataset->config_hash != sim_cfg.config_hash()) {
      std::fprintf(stderr,
                   "warning: dataset config %s differs from the simulator config %s; "
                   "evaluation telemetry may be skipped\n",
                   dataset->config_hash.c_str(), sim_cfg.config_hash().c_str());
    }
  }

  bool eval_enabled = false;
  const agents::TrainHooks hooks = eval_hooks(sim_cfg, cfg.seed, eval_enabled);

  std::optional<agents::TrainResult> result;
  if (args.algo == "bc") {
    result.emplace(agents::train_offline(*dataset, cfg, true, hooks));
  } else if (args.algo == "offline") {
    result.emplace(agents::train_offline(*dataset, cfg, false, hooks));
  } else if (args.algo == "online") {
    agents::SimTrainEnv env(sim_cfg);
    result.emplace(agents::train_online(env, cfg, {}, hooks));
  } else if (args.algo == "offline-online") {
    agents::AgentConfig pre_cfg = cfg;
    pre_cfg.offline_steps = cfg.pretrain_steps;
    std::optional<agents::TrainResult> pre;
    pre.emplace(agents::train_offline(*dataset, pre_cfg, false));
    agents::WarmStart warm;
    warm.policy = &pre->policy;
    warm.buffer_fill = &*dataset;
    agents::SimTrainEnv env(sim_cfg);
    result.emplace(agents::train_online(env, cfg, warm, hooks));
  } else {
    throw ConfigError("unknown algo: " + args.algo);
  }

  std::filesystem::create_directories(args.out_dir);
  const std::string policy_path = args.out_dir + "/policy.json";
  result->policy.save(policy_path);
  agents::write_telemetry_csv(args.out_dir + "/telemetry.csv", result->telemetry);
  cfg.save(args.out_dir + "/agent.cfg");
  sim_cfg.save(args.out_dir + "/sim.cfg");

  double final_eval = std::numeric_limits<double>::quiet_NaN();
  for (auto it = result->telemetry.rbegin(); it != result->telemetry.rend(); ++it) {
    if (std::isfinite(it->eval_value)) {
      final_eval = it->eval_value;
      break;
    }
  }
  std::printf("trained %s for %lld steps, checkpoint %s\n", args.algo.c_str(),
              static_cast<long long>(args.algo == "bc" || args.algo == "offline" ? cfg.offline_steps
                                                                                 : cfg.online_steps),
              policy_path.c_str());
  if (std::isfinite(final_eval)) std::printf("final eval value %.10g\n", final_eval);
  if (result->zero_filter_batches > 0) {
    std::printf("zero-filter batches %lld\n", static_cast<long long>(result->zero_filter_batches));
  }
  return 0;
}

int cmd_evaluate(const std::string& checkpoint, const SimArgs& sim_args, int rollouts, int steps,
                 uint64_t seed, const std::string& csv) {
  const sim::SimConfig cfg = sim_args.resolve();
  const agents::Policy policy = agents::Policy::load(checkpoint);
  const eval::EvalReport report = eval::evaluate_policy(policy, cfg, rollouts, steps, seed);
  print_report(report);
  if (!csv.empty()) {
    std::ofstream os(csv);
    if (!os) throw IoError("cannot open csv file for writing: " + csv);
    os << "rollout,value\n";
    char buf[64];
    for (size_t i = 0; i < report.per_rollout.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.10g", report.per_rollout[i]);
      os << i << "," << buf << "\n";
    }
  }
  return 0;
}

int cmd_agreement(const std::string& checkpoint, bool random_probe, const std::string& heuristic,
                  const SimArgs& sim_args, int rollouts, int steps, uint64_t seed) {
  const sim::SimConfig cfg = sim_args.resolve();
  const heuristics::HeuristicKind kind = heuristics::heuristic_from_string(heuristic);
  double frac = 0.0;
  if (random_probe) {
    data::RandomActor probe(derive_seed(seed, 91));
    frac = eval::actor_agreement(probe, kind, cfg, rollouts, steps, seed);
  } else {
    const agents::Policy policy = agents::Policy::load(checkpoint);
    frac = eval::action_agreement(policy, kind, cfg, rollouts, steps, seed);
  }
  std::printf("agreement %.10g\n", frac);
  return 0;
}

int cmd_experiment(const std::string& spec_path, const std::string& output_dir, bool paper_scale) {
  eval::ExperimentSpec spec =
      spec_path.empty() ? eval::ExperimentSpec{} : eval::ExperimentSpec::load(spec_path);
  if (!output_dir.empty()) spec.output_dir = output_dir;
  if (paper_scale) spec.apply_paper_scale();
  spec.validate();
  std::printf("running experiments [");
  const std::vector<std::string> enabled = spec.enabled();
  for (size_t i = 0; i < enabled.size(); ++i) std::printf("%s%s", i ? ", " : "", enabled[i].c_str());
  std::printf("] with %u workers\n", worker_count());

  const eval::ExperimentResult result = eval::run_experiment(spec);
  for (const eval::CellFailure& f : result.failures) {
    std::fprintf(stderr, "cell failed: %s: %s\n", f.cell.c_str(), f.error.c_str());
  }
  std::printf("results %s\n", result.results_path.c_str());
  std::printf("summary %s\n", result.summary_path.c_str());
  std::printf("meta %s\n", result.meta_path.c_str());
  if (!result.complete()) {
    std::fprintf(stderr, "%zu cell(s) failed; results are partial\n", result.failures.size());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greenlaunch: green-datacenter job scheduling simulator and RL trainer"};
  app.set_version_flag("--version", std::string(greenlaunch::eval::kVersion));
  app.require_subcommand(1);
  app.footer("Set GREENLAUNCH_THREADS to cap the worker pool used for experiment cells.");

  std::string gd_policy = "qos";
  std::string gd_out;
  SimArgs gd_sim;
  int gd_rollouts = 8;
  int gd_steps = 2000;
  uint64_t gd_seed = 1;
  CLI::App* gd = app.add_subcommand("generate-data", "collect a transition dataset from a behavior policy");
  gd->add_option("--policy", gd_policy, "behavior policy")
      ->check(CLI::IsMember({"sjf", "fcfs", "qos", "hvf", "random", "combo"}))
      ->capture_default_str();
  gd->add_option("--out", gd_out, "output dataset file")->required();
  gd_sim.attach(gd);
  gd->add_option("--rollouts", gd_rollouts, "episodes to collect")->capture_default_str();
  gd->add_option("--steps", gd_steps, "steps per episode")->capture_default_str();
  gd->add_option("--seed", gd_seed, "collection seed")->capture_default_str();

  TrainArgs tr;
  CLI::App* train = app.add_subcommand("train", "train an agent");
  train->add_option("--algo", tr.algo, "training algorithm")
      ->check(CLI::IsMember({"bc", "offline", "online", "offline-online"}))
      ->required();
  train->add_option("--data", tr.data_path, "input dataset (bc, offline, offline-online)")
      ->check(CLI::ExistingFile);
  train->add_option("--out", tr.out_dir, "output directory")->capture_default_str();
  train->add_option("--agent-config", tr.agent_config_path, "agent config file")->check(CLI::ExistingFile);
  train->add_option("--filter", tr.filter, "advantage filter")
      ->check(CLI::IsMember({"uniform", "binary", "exp"}));
  train->add_option("--steps", tr.steps, "override the step budget for the chosen algo");
  train->add_option("--seed", tr.seed, "training seed");
  train->add_flag("--paper-scale", tr.paper_scale, "use full paper-scale step budgets");
  tr.sim.attach(train);

  std::string ev_checkpoint;
  SimArgs ev_sim;
  int ev_rollouts = 10;
  int ev_steps = 2000;
  uint64_t ev_seed = 1;
  std::string ev_csv;
  CLI::App* ev = app.add_subcommand("evaluate", "greedy-rollout evaluation of a checkpoint");
  ev->add_option("--checkpoint", ev_checkpoint, "policy checkpoint file")
      ->check(CLI::ExistingFile)
      ->required();
  ev_sim.attach(ev);
  ev->add_option("--rollouts", ev_rollouts, "evaluation rollouts")->capture_default_str();
  ev->add_option("--steps", ev_steps, "steps per rollout")->capture_default_str();
  ev->add_option("--seed", ev_seed, "evaluation seed")->capture_default_str();
  ev->add_option("--csv", ev_csv, "write per-rollout values to this csv file");

  std::string ag_checkpoint;
  bool ag_random = false;
  std::string ag_heuristic;
  SimArgs ag_sim;
  int ag_rollouts = 5;
  int ag_steps = 2000;
  uint64_t ag_seed = 1;
  CLI::App* ag = app.add_subcommand("agreement", "fraction of heuristic actions a probe reproduces");
  CLI::Option* ag_ckpt_opt =
      ag->add_option("--checkpoint", ag_checkpoint, "policy checkpoint file")->check(CLI::ExistingFile);
  CLI::Option* ag_random_opt = ag->add_flag("--random", ag_random, "probe with a uniform random policy");
  ag_ckpt_opt->excludes(ag_random_opt);
  ag->add_option("--heuristic", ag_heuristic, "heuristic that controls the rollout")
      ->check(CLI::IsMember({"sjf", "fcfs", "qos", "hvf"}))
      ->required();
  ag_sim.attach(ag);
  ag->add_option("--rollouts", ag_rollouts, "rollouts")->capture_default_str();
  ag->add_option("--steps", ag_steps, "steps per rollout")->capture_default_str();
  ag->add_option("--seed", ag_seed, "rollout seed")->capture_default_str();

  std::string ex_spec;
  std::string ex_output;
  bool ex_paper = false;
  CLI::App* ex = app.add_subcommand("experiment", "run the experiment suites from a spec file");
  ex->add_option("--spec", ex_spec, "experiment spec file (key = value lines)")->check(CLI::ExistingFile);
  ex->add_option("--output", ex_output, "override the output directory");
  ex->add_flag("--paper-scale", ex_paper, "apply full paper-scale budgets to the spec");

  try {
    app.parse(argc, argv);
    if (gd->parsed()) return cmd_generate_data(gd_policy, gd_out, gd_sim, gd_rollouts, gd_steps, gd_seed);
    if (train->parsed()) return cmd_train(tr);
    if (ev->parsed()) return cmd_evaluate(ev_checkpoint, ev_sim, ev_rollouts, ev_steps, ev_seed, ev_csv);
    if (ag->parsed()) {
      if (!ag_random && ag_checkpoint.empty()) {
        std::fprintf(stderr, "error: pass --checkpoint or --random\n");
        return 1;
      }
      return cmd_agreement(ag_checkpoint, ag_random, ag_heuristic, ag_sim, ag_rollouts, ag_steps, ag_seed);
    }
    if (ex->parsed()) return cmd_experiment(ex_spec, ex_output, ex_paper);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
