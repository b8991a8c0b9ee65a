#include "greenlaunch/eval/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "greenlaunch/common/thread_pool.hpp"
#include "greenlaunch/eval/svg.hpp"
#include "json.hpp"

namespace greenlaunch::eval {

namespace {

namespace fs = std::filesystem;
using heuristics::HeuristicKind;

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

bool known_experiment(const std::string& id) {
  for (const char* known : kExperimentIds) {
    if (id == known) return true;
  }
  return false;
}

KvConfig strip_prefix(const KvConfig& kv, const std::string& prefix) {
  KvConfig out;
  for (const auto& [key, value] : kv.entries()) {
    if (key.rfind(prefix, 0) == 0) out.set(key.substr(prefix.size()), value);
  }
  return out;
}

sim::SimConfig sim_for(const ExperimentSpec& spec, int r) {
  sim::SimConfig cfg = spec.sim;
  cfg.r_max = r;
  return cfg;
}

agents::AgentConfig agent_for(const ExperimentSpec& spec, uint64_t seed) {
  agents::AgentConfig cfg = spec.agent;
  cfg.seed = seed;
  return cfg;
}

uint64_t eval_seed(uint64_t train_seed) { return derive_seed(train_seed, 40); }

// Heuristic demonstration sets, built once per run and shared read-only by
// the worker cells. "combo" interleaves all four heuristics round-robin so a
// combo set and a single-heuristic set hold the same number of rollouts.
struct DatasetBank {
  std::map<std::string, data::Dataset> sets;
  std::map<int, HeuristicKind> best;

  static std::string key(const std::string& kind, int r) { return kind + "@" + std::to_string(r); }

  const data::Dataset& get(const std::string& kind, int r) const { return sets.at(key(kind, r)); }
};

data::Dataset build_single(HeuristicKind h, const sim::SimConfig& cfg, int rollouts, int steps,
                           uint64_t seed) {
  data::HeuristicActor actor(h);
  return data::collect_rollouts(actor, cfg, rollouts, steps, seed);
}

data::Dataset build_combo(const sim::SimConfig& cfg, int rollouts, int steps, uint64_t seed) {
  return data::collect_combo_rollouts(cfg, rollouts, steps, seed);
}

HeuristicKind pick_best_heuristic(const ExperimentSpec& spec, int r) {
  const sim::SimConfig cfg = sim_for(spec, r);
  HeuristicKind best = HeuristicKind::sjf;
  double best_value = -std::numeric_limits<double>::infinity();
  for (HeuristicKind h : heuristics::kAllHeuristics) {
    data::HeuristicActor actor(h);
    const double mean = evaluate_actor(actor, cfg, spec.eval_rollouts, spec.rollout_steps,
                                       derive_seed(7001, static_cast<uint64_t>(r)))
                            .mean;
    if (mean > best_value) {
      best_value = mean;
      best = h;
    }
  }
  return best;
}

DatasetBank build_datasets(const ExperimentSpec& spec) {
  std::set<std::pair<std::string, int>> wanted;
  const int r0 = spec.resources.front();
  for (const std::string& exp : spec.enabled()) {
    if (exp == "bc_quality") {
      for (int r : spec.resources) {
        wanted.insert({"best", r});
        wanted.insert({"combo", r});
      }
    } else if (exp == "offline_vs_bc") {
      for (int r : spec.resources) wanted.insert({"combo", r});
    } else if (exp == "launchpad") {
      wanted.insert({"qos", r0});
    } else if (exp == "agreement") {
      wanted.insert({"qos", r0});
      wanted.insert({"sjf", r0});
      wanted.insert({"fcfs", r0});
    }
  }

  DatasetBank bank;
  for (const auto& [kind, r] : wanted) {
    const sim::SimConfig cfg = sim_for(spec, r);
    const uint64_t seed = derive_seed(derive_seed(7100, static_cast<uint64_t>(r)), fnv1a64(kind));
    if (kind == "combo") {
      bank.sets[DatasetBank::key(kind, r)] = build_combo(cfg, spec.dataset_rollouts, spec.rollout_steps, seed);
    } else if (kind == "best") {
      if (bank.best.count(r) == 0) bank.best[r] = pick_best_heuristic(spec, r);
      bank.sets[DatasetBank::key(kind, r)] =
          build_single(bank.best[r], cfg, spec.dataset_rollouts, spec.rollout_steps, seed);
    } else {
      bank.sets[DatasetBank::key(kind, r)] = build_single(
          heuristics::heuristic_from_string(kind), cfg, spec.dataset_rollouts, spec.rollout_steps, seed);
    }
  }
  return bank;
}

struct Cell {
  std::string name;
  std::function<std::vector<ResultRow>()> run;
};

ResultRow row(const std::string& exp, const std::string& agent, int r, uint64_t seed,
              const std::string& metric, double value) {
  return {exp, agent, r, seed, metric, value};
}

double eval_trained(const agents::Policy& policy, const ExperimentSpec& spec, int r, uint64_t seed) {
  return evaluate_policy(policy, sim_for(spec, r), spec.eval_rollouts, spec.rollout_steps, eval_seed(seed)).mean;
}

Cell offline_cell(const ExperimentSpec& spec, const DatasetBank& bank, const std::string& exp,
                  const std::string& agent_name, const std::string& data_kind, int r, uint64_t seed,
                  bool bc_mode) {
  auto run = [&spec, &bank, exp, agent_name, data_kind, r, seed, bc_mode] {
    const agents::TrainResult trained =
        agents::train_offline(bank.get(data_kind, r), agent_for(spec, seed), bc_mode);
    return std::vector<ResultRow>{
        row(exp, agent_name, r, seed, "eval_value", eval_trained(trained.policy, spec, r, seed))};
  };
  return {exp + "/" + agent_name + "/r" + std::to_string(r) + "/s" + std::to_string(seed), run};
}

Cell heuristic_cell(const ExperimentSpec& spec, const std::string& exp, HeuristicKind h, int r) {
  auto run = [&spec, exp, h, r] {
    std::vector<ResultRow> rows;
    const sim::SimConfig cfg = sim_for(spec, r);
    for (uint64_t seed : spec.seeds) {
      data::HeuristicActor actor(h);
      const double mean =
          evaluate_actor(actor, cfg, spec.eval_rollouts, spec.rollout_steps, eval_seed(seed)).mean;
      rows.push_back(row(exp, heuristics::to_string(h), r, seed, "eval_value", mean));
    }
    return rows;
  };
  return {exp + "/" + std::string(heuristics::to_string(h)) + "/r" + std::to_string(r), run};
}

Cell online_cell(const ExperimentSpec& spec, const std::string& exp, int r, uint64_t seed) {
  auto run = [&spec, exp, r, seed] {
    agents::SimTrainEnv env(sim_for(spec, r));
    const agents::TrainResult trained = agents::train_online(env, agent_for(spec, seed));
    return std::vector<ResultRow>{
        row(exp, "online", r, seed, "eval_value", eval_trained(trained.policy, spec, r, seed))};
  };
  return {exp + "/online/r" + std::to_string(r) + "/s" + std::to_string(seed), run};
}

Cell launchpad_cell(const ExperimentSpec& spec, const DatasetBank& bank, int r, uint64_t seed) {
  auto run = [&spec, &bank, r, seed] {
    const LaunchpadOutcome out = run_launchpad(sim_for(spec, r), agent_for(spec, seed),
                                               bank.get("qos", r), spec.eval_rollouts,
                                               spec.rollout_steps, seed);
    const double budget = static_cast<double>(spec.agent.online_steps);
    std::vector<ResultRow> rows;
    rows.push_back(row("launchpad", "offline_ref", r, seed, "eval_value", out.target_value));
    rows.push_back(row("launchpad", "online_warm", r, seed, "eval_value", out.warm_final));
    rows.push_back(row("launchpad", "online_cold", r, seed, "eval_value", out.cold_final));
    rows.push_back(row("launchpad", "online_warm", r, seed, "steps_to_target",
                       out.warm_steps >= 0 ? static_cast<double>(out.warm_steps) : budget));
    rows.push_back(row("launchpad", "online_cold", r, seed, "steps_to_target",
                       out.cold_steps >= 0 ? static_cast<double>(out.cold_steps) : budget));
    rows.push_back(row("launchpad", "online_warm", r, seed, "reached", out.warm_steps >= 0 ? 1.0 : 0.0));
    rows.push_back(row("launchpad", "online_cold", r, seed, "reached", out.cold_steps >= 0 ? 1.0 : 0.0));
    return rows;
  };
  return {"launchpad/r" + std::to_string(r) + "/s" + std::to_string(seed), run};
}

Cell agreement_cell(const ExperimentSpec& spec, const DatasetBank& bank, const std::string& agent_kind,
                    HeuristicKind source, int r, uint64_t seed) {
  const std::string source_name = heuristics::to_string(source);
  const std::string agent_name = agent_kind + "_" + source_name;
  auto run = [&spec, &bank, agent_kind, source, source_name, agent_name, r, seed] {
    const data::Dataset& ds = bank.get(source_name, r);
    agents::AgentConfig cfg = agent_for(spec, seed);
    agents::Policy policy = [&] {
      if (agent_kind == "bc") return agents::train_offline(ds, cfg, true).policy;
      if (agent_kind == "offline") return agents::train_offline(ds, cfg, false).policy;
      agents::AgentConfig pre_cfg = cfg;
      pre_cfg.offline_steps = cfg.pretrain_steps;
      const agents::TrainResult pre = agents::train_offline(ds, pre_cfg, false);
      agents::SimTrainEnv env(sim_for(spec, r));
      agents::WarmStart warm;
      warm.policy = &pre.policy;
      warm.buffer_fill = &ds;
      return agents::train_online(env, cfg, warm).policy;
    }();
    const double frac = action_agreement(policy, source, sim_for(spec, r), spec.eval_rollouts,
                                         spec.rollout_steps, eval_seed(seed));
    return std::vector<ResultRow>{row("agreement", agent_name, r, seed, "agreement", frac)};
  };
  return {"agreement/" + agent_name + "/r" + std::to_string(r) + "/s" + std::to_string(seed), run};
}

std::vector<Cell> build_cells(const ExperimentSpec& spec, const DatasetBank& bank) {
  std::vector<Cell> cells;
  const int r0 = spec.resources.front();
  for (const std::string& exp : spec.enabled()) {
    if (exp == "bc_quality") {
      for (int r : spec.resources) {
        for (uint64_t s : spec.seeds) {
          cells.push_back(offline_cell(spec, bank, exp, "bc_best", "best", r, s, true));
          cells.push_back(offline_cell(spec, bank, exp, "bc_combo", "combo", r, s, true));
        }
        for (HeuristicKind h : heuristics::kAllHeuristics) cells.push_back(heuristic_cell(spec, exp, h, r));
      }
    } else if (exp == "offline_vs_bc") {
      for (int r : spec.resources) {
        for (uint64_t s : spec.seeds) {
          cells.push_back(offline_cell(spec, bank, exp, "bc_combo", "combo", r, s, true));
          cells.push_back(offline_cell(spec, bank, exp, "offline_combo", "combo", r, s, false));
        }
      }
    } else if (exp == "online_scaling") {
      for (int r : spec.resources) {
        for (uint64_t s : spec.seeds) cells.push_back(online_cell(spec, exp, r, s));
        for (HeuristicKind h : heuristics::kAllHeuristics) cells.push_back(heuristic_cell(spec, exp, h, r));
      }
    } else if (exp == "launchpad") {
      for (uint64_t s : spec.seeds) cells.push_back(launchpad_cell(spec, bank, r0, s));
    } else if (exp == "agreement") {
      for (HeuristicKind source : {HeuristicKind::qos, HeuristicKind::sjf, HeuristicKind::fcfs}) {
        for (const char* kind : {"bc", "offline", "offline_online"}) {
          for (uint64_t s : spec.seeds) cells.push_back(agreement_cell(spec, bank, kind, source, r0, s));
        }
      }
    }
  }
  return cells;
}

struct SummaryRow {
  std::string experiment;
  std::string agent;
  int resources = 0;
  std::string metric;
  std::vector<double> values;

  double mean() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }
  double ci95() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
  }
};

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> out;
  std::map<std::string, size_t> index;
  for (const ResultRow& r : rows) {
    const std::string key = r.experiment + "|" + r.agent + "|" + std::to_string(r.resources) + "|" + r.metric;
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.size());
      out.push_back({r.experiment, r.agent, r.resources, r.metric, {r.value}});
    } else {
      out[it->second].values.push_back(r.value);
    }
  }
  return out;
}

void write_charts(const ExperimentSpec& spec, const std::vector<SummaryRow>& summary) {
  for (const std::string& exp : spec.enabled()) {
    if (exp == "bc_quality" || exp == "offline_vs_bc" || exp == "online_scaling") {
      std::vector<Series> series;
      std::map<std::string, size_t> by_agent;
      for (const SummaryRow& s : summary) {
        if (s.experiment != exp || s.metric != "eval_value") continue;
        auto it = by_agent.find(s.agent);
        if (it == by_agent.end()) {
          by_agent.emplace(s.agent, series.size());
          series.push_back({s.agent, {}, {}, {}});
          it = by_agent.find(s.agent);
        }
        Series& line = series[it->second];
        line.x.push_back(static_cast<double>(s.resources));
        line.y.push_back(s.mean());
        line.err.push_back(s.ci95());
      }
      write_line_chart(spec.output_dir + "/value_" + exp + ".svg", "Total job value: " + exp,
                       "resources", "mean total job value", series);
    } else if (exp == "launchpad") {
      std::vector<Bar> bars;
      for (const SummaryRow& s : summary) {
        if (s.experiment != exp || s.metric != "steps_to_target") continue;
        bars.push_back({s.agent, s.mean(), s.agent == "online_warm" ? 0 : 1});
      }
      write_bar_chart(spec.output_dir + "/launchpad_steps.svg", "Online steps to reach the offline target",
                      "steps", bars);
    } else if (exp == "agreement") {
      std::vector<Bar> bars;
      for (const SummaryRow& s : summary) {
        if (s.experiment != exp || s.metric != "agreement") continue;
        int group = 2;
        if (s.agent.rfind("bc_", 0) == 0) group = 0;
        else if (s.agent.rfind("offline_online_", 0) == 0) group = 2;
        else if (s.agent.rfind("offline_", 0) == 0) group = 1;
        bars.push_back({s.agent, s.mean(), group});
      }
      write_bar_chart(spec.output_dir + "/agreement.svg", "Action agreement with the source heuristic",
                      "agreement", bars);
    }
  }
}

void write_meta(const ExperimentSpec& spec, const std::vector<CellFailure>& failures,
                const std::string& path) {
  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["created_unix"] = static_cast<int64_t>(std::time(nullptr));
  meta["workers"] = worker_count();
  nlohmann::json spec_json = nlohmann::json::object();
  const KvConfig spec_kv = spec.to_kv();
  for (const auto& [key, value] : spec_kv.entries()) spec_json[key] = value;
  meta["spec"] = spec_json;
  nlohmann::json fail_json = nlohmann::json::array();
  for (const CellFailure& f : failures) fail_json.push_back({{"cell", f.cell}, {"error", f.error}});
  meta["failures"] = fail_json;
  std::ofstream os(path);
  if (!os) throw IoError("cannot open meta file for writing: " + path);
  os << meta.dump(2) << "\n";
}

}  // namespace

std::vector<std::string> ExperimentSpec::enabled() const {
  if (experiments.empty()) {
    return {kExperimentIds[0], kExperimentIds[1], kExperimentIds[2], kExperimentIds[3], kExperimentIds[4]};
  }
  return experiments;
}

void ExperimentSpec::apply_paper_scale() {
  rollout_steps = 100000;
  if (std::find(resources.begin(), resources.end(), 100) == resources.end()) resources.push_back(100);
  agent.apply_paper_scale();
}

void ExperimentSpec::validate() const {
  for (const std::string& exp : experiments) {
    if (!known_experiment(exp)) {
      throw ConfigError("unknown experiment '" + exp + "', expected one of bc_quality, offline_vs_bc, "
                        "online_scaling, launchpad, agreement");
    }
  }
  if (resources.empty()) throw ConfigError("experiment spec needs at least one resources entry");
  for (int r : resources) {
    if (r <= 0) throw ConfigError("resources entries must be positive");
  }
  if (seeds.empty()) throw ConfigError("experiment spec needs at least one seed");
  if (eval_rollouts <= 0) throw ConfigError("eval_rollouts must be positive");
  if (rollout_steps <= 0) throw ConfigError("rollout_steps must be positive");
  if (dataset_rollouts <= 0) throw ConfigError("dataset_rollouts must be positive");
  if (output_dir.empty()) throw ConfigError("output_dir must be set");
  agent.validate();
  sim.validate();
}

ExperimentSpec ExperimentSpec::from_kv(const KvConfig& kv) {
  ExperimentSpec spec;
  if (kv.has("experiments")) spec.experiments = kv.get_string_list("experiments");
  if (kv.has("resources")) {
    spec.resources.clear();
    for (int64_t r : kv.get_int_list("resources")) spec.resources.push_back(static_cast<int>(r));
  }
  if (kv.has("seeds")) {
    spec.seeds.clear();
    for (int64_t s : kv.get_int_list("seeds")) spec.seeds.push_back(static_cast<uint64_t>(s));
  }
  spec.eval_rollouts = static_cast<int>(kv.get_int("eval_rollouts", spec.eval_rollouts));
  spec.rollout_steps = static_cast<int>(kv.get_int("rollout_steps", spec.rollout_steps));
  spec.dataset_rollouts = static_cast<int>(kv.get_int("dataset_rollouts", spec.dataset_rollouts));
  spec.output_dir = kv.get_string("output_dir", spec.output_dir);
  spec.agent = agents::AgentConfig::from_kv(strip_prefix(kv, "agent."));
  spec.sim = sim::SimConfig::from_kv(strip_prefix(kv, "sim."));
  if (kv.get_bool("paper_scale", false)) spec.apply_paper_scale();
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::load(const std::string& path) {
  return from_kv(KvConfig::parse_file(path));
}

KvConfig ExperimentSpec::to_kv() const {
  KvConfig kv;
  if (!experiments.empty()) kv.set("experiments", join(experiments));
  std::vector<std::string> parts;
  for (int r : resources) parts.push_back(std::to_string(r));
  kv.set("resources", join(parts));
  parts.clear();
  for (uint64_t s : seeds) parts.push_back(std::to_string(s));
  kv.set("seeds", join(parts));
  kv.set("eval_rollouts", std::to_string(eval_rollouts));
  kv.set("rollout_steps", std::to_string(rollout_steps));
  kv.set("dataset_rollouts", std::to_string(dataset_rollouts));
  kv.set("output_dir", output_dir);
  const KvConfig agent_kv = agent.to_kv();
  for (const auto& [key, value] : agent_kv.entries()) kv.set("agent." + key, value);
  const KvConfig sim_kv = sim.to_kv();
  for (const auto& [key, value] : sim_kv.entries()) kv.set("sim." + key, value);
  return kv;
}

void ExperimentSpec::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open spec file for writing: " + path);
  const KvConfig kv = to_kv();
  for (const auto& [key, value] : kv.entries()) os << key << " = " << value << "\n";
  if (!os) throw IoError("failed writing spec file: " + path);
}

LaunchpadOutcome run_launchpad(const sim::SimConfig& sim_config, const agents::AgentConfig& agent,
                               const data::Dataset& pretrain_data, int eval_rollouts,
                               int rollout_steps, uint64_t seed) {
  agents::AgentConfig cfg = agent;
  cfg.seed = seed;
  if (cfg.eval_every % cfg.telemetry_every != 0) cfg.telemetry_every = cfg.eval_every;

  LaunchpadOutcome out;
  const agents::TrainResult offline_ref = agents::train_offline(pretrain_data, cfg, false);
  out.target_value =
      evaluate_policy(offline_ref.policy, sim_config, eval_rollouts, rollout_steps, derive_seed(seed, 41)).mean;

  auto online_case = [&](bool warm, int64_t& steps_to_target, double& final_value) {
    agents::SimTrainEnv env(sim_config);
    double last_eval = std::numeric_limits<double>::quiet_NaN();
    agents::TrainHooks hooks;
    hooks.eval_value = [&](const agents::Policy& p) {
      last_eval = evaluate_policy(p, sim_config, eval_rollouts, rollout_steps, derive_seed(seed, 42)).mean;
      return last_eval;
    };
    hooks.checkpoint = [&](const agents::Policy&, int64_t step) {
      if (steps_to_target < 0 && last_eval >= kLaunchpadTolerance * out.target_value)
        steps_to_target = step;
    };

    agents::WarmStart warm_start;
    if (warm) {
      warm_start.policy = &offline_ref.policy;
      warm_start.buffer_fill = &pretrain_data;
    }
    const agents::TrainResult trained = agents::train_online(env, cfg, warm_start, hooks);
    final_value =
        evaluate_policy(trained.policy, sim_config, eval_rollouts, rollout_steps, derive_seed(seed, 43)).mean;
  };

  online_case(true, out.warm_steps, out.warm_final);
  online_case(false, out.cold_steps, out.cold_final);
  return out;
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open results file for writing: " + path);
  os << "experiment,agent,resources,seed,metric,value\n";
  for (const ResultRow& r : rows) {
    os << r.experiment << ',' << r.agent << ',' << r.resources << ',' << r.seed << ',' << r.metric
       << ',' << fmt_value(r.value) << "\n";
  }
  if (!os) throw IoError("failed writing results file: " + path);
}

void write_summary_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open summary file for writing: " + path);
  os << "experiment,agent,resources,metric,n,mean,ci95\n";
  for (const SummaryRow& s : summarize(rows)) {
    os << s.experiment << ',' << s.agent << ',' << s.resources << ',' << s.metric << ','
       << s.values.size() << ',' << fmt_value(s.mean()) << ',' << fmt_value(s.ci95()) << "\n";
  }
  if (!os) throw IoError("failed writing summary file: " + path);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  fs::create_directories(spec.output_dir);

  const DatasetBank bank = build_datasets(spec);
  const std::vector<Cell> cells = build_cells(spec, bank);

  std::vector<std::vector<ResultRow>> slots(cells.size());
  std::vector<std::string> errors(cells.size());
  std::vector<std::function<void()>> tasks;
  tasks.reserve(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) {
    tasks.push_back([&cells, &slots, &errors, i] {
      try {
        slots[i] = cells[i].run();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
  }
  run_parallel(std::move(tasks));

  ExperimentResult result;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i].empty()) {
      result.failures.push_back({cells[i].name, errors[i]});
    } else {
      result.rows.insert(result.rows.end(), slots[i].begin(), slots[i].end());
    }
  }

  result.results_path = spec.output_dir + "/results.csv";
  result.summary_path = spec.output_dir + "/summary.csv";
  result.meta_path = spec.output_dir + "/run_meta.json";
  write_results_csv(result.results_path, result.rows);
  write_summary_csv(result.summary_path, result.rows);
  write_charts(spec, summarize(result.rows));
  write_meta(spec, result.failures, result.meta_path);
  return result;
}

}  // namespace greenlaunch::eval
