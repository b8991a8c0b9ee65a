#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "greenlaunch/agents/policy.hpp"
#include "greenlaunch/agents/train.hpp"
#include "greenlaunch/data/collect.hpp"
#include "greenlaunch/data/dataset_io.hpp"
#include "greenlaunch/eval/evaluate.hpp"
#include "greenlaunch/eval/experiment.hpp"
#include "greenlaunch/heuristics/heuristics.hpp"
#include "greenlaunch/sim/env.hpp"

namespace py = pybind11;
using namespace greenlaunch;

namespace {

py::array_t<float> image_array(const sim::EncodedObs& obs, const sim::ObsShape& shape) {
  py::array_t<float> out({shape.image_h, shape.image_w});
  std::copy(obs.image.begin(), obs.image.end(), out.mutable_data());
  return out;
}

py::array_t<float> job_array(const sim::EncodedObs& obs) {
  const py::ssize_t rows = static_cast<py::ssize_t>(obs.job_array.size()) / sim::kJobMetaFields;
  py::array_t<float> out({rows, static_cast<py::ssize_t>(sim::kJobMetaFields)});
  std::copy(obs.job_array.begin(), obs.job_array.end(), out.mutable_data());
  return out;
}

sim::EncodedObs obs_from_arrays(const py::array_t<float>& image, const py::array_t<float>& jobs) {
  sim::EncodedObs obs;
  obs.image.assign(image.data(), image.data() + image.size());
  obs.job_array.assign(jobs.data(), jobs.data() + jobs.size());
  return obs;
}

std::unique_ptr<data::Actor> make_actor(const std::string& name, uint64_t seed) {
  if (name == "random") return std::make_unique<data::RandomActor>(seed);
  if (name == "noop") return std::make_unique<data::NoOpActor>();
  return std::make_unique<data::HeuristicActor>(heuristics::heuristic_from_string(name));
}

}  // namespace

PYBIND11_MODULE(greenlaunch, m) {
  m.doc() = "Green-datacenter scheduling simulator and data-driven RL agents";
  m.attr("__version__") = eval::kVersion;

  py::class_<sim::JobParams>(m, "JobParams")
      .def(py::init<>())
      .def_readwrite("dur_short_min", &sim::JobParams::dur_short_min)
      .def_readwrite("dur_short_max", &sim::JobParams::dur_short_max)
      .def_readwrite("dur_long_min", &sim::JobParams::dur_long_min)
      .def_readwrite("dur_long_max", &sim::JobParams::dur_long_max)
      .def_readwrite("long_job_prob", &sim::JobParams::long_job_prob)
      .def_readwrite("value_coeff_min", &sim::JobParams::value_coeff_min)
      .def_readwrite("value_coeff_max", &sim::JobParams::value_coeff_max)
      .def_readwrite("qos_choices", &sim::JobParams::qos_choices);

  py::class_<sim::PowerParams>(m, "PowerParams")
      .def(py::init<>())
      .def_readwrite("source", &sim::PowerParams::source)
      .def_readwrite("day_len", &sim::PowerParams::day_len)
      .def_readwrite("base", &sim::PowerParams::base)
      .def_readwrite("amp", &sim::PowerParams::amp)
      .def_readwrite("noise_sd", &sim::PowerParams::noise_sd)
      .def_readwrite("min_frac", &sim::PowerParams::min_frac)
      .def_readwrite("trace_file", &sim::PowerParams::trace_file);

  py::class_<sim::SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("r_max", &sim::SimConfig::r_max)
      .def_readwrite("ready_pool_size", &sim::SimConfig::ready_pool_size)
      .def_readwrite("t_horizon", &sim::SimConfig::t_horizon)
      .def_readwrite("lambda_load", &sim::SimConfig::lambda_load)
      .def_readwrite("episode_len", &sim::SimConfig::episode_len)
      .def_readwrite("seed", &sim::SimConfig::seed)
      .def_readwrite("qos_penalty_coeff", &sim::SimConfig::qos_penalty_coeff)
      .def_readwrite("expire_factor", &sim::SimConfig::expire_factor)
      .def_readwrite("jobs", &sim::SimConfig::jobs)
      .def_readwrite("power", &sim::SimConfig::power)
      .def("n_actions", &sim::SimConfig::n_actions)
      .def("validate", &sim::SimConfig::validate)
      .def("config_hash", &sim::SimConfig::config_hash)
      .def("save", &sim::SimConfig::save, py::arg("path"))
      .def_static("load", &sim::SimConfig::load, py::arg("path"));

  py::class_<agents::AgentConfig>(m, "AgentConfig")
      .def(py::init<>())
      .def_readwrite("conv1_channels", &agents::AgentConfig::conv1_channels)
      .def_readwrite("conv2_channels", &agents::AgentConfig::conv2_channels)
      .def_readwrite("job_hidden", &agents::AgentConfig::job_hidden)
      .def_readwrite("merge_hidden", &agents::AgentConfig::merge_hidden)
      .def_readwrite("feature_dim", &agents::AgentConfig::feature_dim)
      .def_readwrite("n_critics", &agents::AgentConfig::n_critics)
      .def_readwrite("lr", &agents::AgentConfig::lr)
      .def_readwrite("online_lr", &agents::AgentConfig::online_lr)
      .def_readwrite("batch_size", &agents::AgentConfig::batch_size)
      .def_readwrite("gamma", &agents::AgentConfig::gamma)
      .def_readwrite("tau", &agents::AgentConfig::tau)
      .def_readwrite("alpha_ent", &agents::AgentConfig::alpha_ent)
      .def_property(
          "filter",
          [](const agents::AgentConfig& c) { return agents::to_string(c.filter); },
          [](agents::AgentConfig& c, const std::string& v) { c.filter = agents::filter_from_string(v); })
      .def_readwrite("exp_beta", &agents::AgentConfig::exp_beta)
      .def_readwrite("exp_w_max", &agents::AgentConfig::exp_w_max)
      .def_readwrite("advantage_samples", &agents::AgentConfig::advantage_samples)
      .def_readwrite("offline_steps", &agents::AgentConfig::offline_steps)
      .def_readwrite("online_steps", &agents::AgentConfig::online_steps)
      .def_readwrite("pretrain_steps", &agents::AgentConfig::pretrain_steps)
      .def_readwrite("buffer_capacity", &agents::AgentConfig::buffer_capacity)
      .def_readwrite("epsilon_start", &agents::AgentConfig::epsilon_start)
      .def_readwrite("epsilon_end", &agents::AgentConfig::epsilon_end)
      .def_readwrite("epsilon_decay_steps", &agents::AgentConfig::epsilon_decay_steps)
      .def_readwrite("warm_start_params", &agents::AgentConfig::warm_start_params)
      .def_readwrite("warm_start_buffer", &agents::AgentConfig::warm_start_buffer)
      .def_readwrite("bc_train_critic", &agents::AgentConfig::bc_train_critic)
      .def_readwrite("eval_every", &agents::AgentConfig::eval_every)
      .def_readwrite("telemetry_every", &agents::AgentConfig::telemetry_every)
      .def_readwrite("seed", &agents::AgentConfig::seed)
      .def("apply_paper_scale", &agents::AgentConfig::apply_paper_scale)
      .def("validate", &agents::AgentConfig::validate)
      .def("save", &agents::AgentConfig::save, py::arg("path"))
      .def_static("load", &agents::AgentConfig::load, py::arg("path"));

  py::class_<sim::StepInfo>(m, "StepInfo")
      .def_readonly("invalid_action", &sim::StepInfo::invalid_action)
      .def_readonly("completed_value", &sim::StepInfo::completed_value)
      .def_readonly("penalty_value", &sim::StepInfo::penalty_value)
      .def_readonly("n_completed", &sim::StepInfo::n_completed)
      .def_readonly("n_expired", &sim::StepInfo::n_expired)
      .def_readonly("n_arrivals", &sim::StepInfo::n_arrivals)
      .def_readonly("n_power_preempted", &sim::StepInfo::n_power_preempted);

  py::class_<sim::StepResult>(m, "StepResult")
      .def_readonly("reward", &sim::StepResult::reward)
      .def_readonly("done", &sim::StepResult::done)
      .def_readonly("info", &sim::StepResult::info);

  py::class_<sim::DatacenterEnv>(m, "DatacenterEnv")
      .def(py::init<sim::SimConfig>(), py::arg("config"))
      .def("reset", py::overload_cast<>(&sim::DatacenterEnv::reset))
      .def("reset", py::overload_cast<uint64_t>(&sim::DatacenterEnv::reset), py::arg("seed"))
      .def("step",
           [](sim::DatacenterEnv& env, int action) {
             return env.step(sim::Action::decode(action, env.config().ready_pool_size));
           },
           py::arg("action"))
      .def("observation",
           [](const sim::DatacenterEnv& env) {
             const sim::EncodedObs obs = env.encode_observation();
             return py::make_tuple(image_array(obs, env.obs_shape()), job_array(obs));
           })
      .def("n_actions", &sim::DatacenterEnv::n_actions)
      .def("clock", &sim::DatacenterEnv::clock)
      .def("done", py::overload_cast<>(&sim::DatacenterEnv::done, py::const_))
      .def("heuristic_action",
           [](const sim::DatacenterEnv& env, const std::string& name) {
             const sim::Action a = heuristics::select_action(heuristics::heuristic_from_string(name), env);
             return a.encode(env.config().ready_pool_size);
           },
           py::arg("name"))
      .def("finished_value_total", &sim::DatacenterEnv::finished_value_total)
      .def("penalty_total", &sim::DatacenterEnv::penalty_total)
      .def("jobs_finished", &sim::DatacenterEnv::jobs_finished)
      .def("jobs_expired", &sim::DatacenterEnv::jobs_expired)
      .def("jobs_arrived", &sim::DatacenterEnv::jobs_arrived);

  py::class_<data::Dataset>(m, "Dataset")
      .def("__len__", &data::Dataset::size)
      .def_readonly("n_actions", &data::Dataset::n_actions)
      .def_readonly("config_hash", &data::Dataset::config_hash)
      .def("transition",
           [](const data::Dataset& ds, size_t i) {
             const data::Transition& t = ds.transitions.at(i);
             return py::make_tuple(image_array(t.obs, ds.shape), job_array(t.obs), t.action, t.reward,
                                   t.behavior_tag);
           },
           py::arg("index"));

  m.def("collect_rollouts",
        [](const std::string& policy, const sim::SimConfig& cfg, int n_rollouts, int steps,
           uint64_t seed) {
          if (policy == "combo") return data::collect_combo_rollouts(cfg, n_rollouts, steps, seed);
          const std::unique_ptr<data::Actor> actor = make_actor(policy, derive_seed(seed, 91));
          return data::collect_rollouts(*actor, cfg, n_rollouts, steps, seed);
        },
        py::arg("policy"), py::arg("config"), py::arg("n_rollouts"), py::arg("steps"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  m.def("save_dataset",
        py::overload_cast<const data::Dataset&, const std::string&>(&data::save_dataset),
        py::arg("dataset"), py::arg("path"));
  m.def("load_dataset",
        [](const std::string& path, const std::string& expected_hash) {
          data::LoadResult res = data::load_dataset(path, expected_hash);
          return py::make_tuple(std::move(res.dataset), res.warnings);
        },
        py::arg("path"), py::arg("expected_config_hash") = std::string());

  py::class_<agents::Policy>(m, "Policy")
      .def("n_actions", &agents::Policy::n_actions)
      .def("logits",
           [](const agents::Policy& p, const py::array_t<float>& image, const py::array_t<float>& jobs) {
             return p.logits(obs_from_arrays(image, jobs));
           },
           py::arg("image"), py::arg("jobs"))
      .def("greedy_action",
           [](const agents::Policy& p, const py::array_t<float>& image, const py::array_t<float>& jobs) {
             Rng rng(0);
             return p.select_action(obs_from_arrays(image, jobs), agents::SelectMode::greedy, rng);
           },
           py::arg("image"), py::arg("jobs"))
      .def("save", &agents::Policy::save, py::arg("path"))
      .def_static("load", &agents::Policy::load, py::arg("path"));

  py::class_<agents::TelemetryRow>(m, "TelemetryRow")
      .def_readonly("step", &agents::TelemetryRow::step)
      .def_readonly("actor_loss", &agents::TelemetryRow::actor_loss)
      .def_readonly("critic_loss", &agents::TelemetryRow::critic_loss)
      .def_readonly("eval_value", &agents::TelemetryRow::eval_value)
      .def_readonly("agreement", &agents::TelemetryRow::agreement)
      .def_readonly("epsilon", &agents::TelemetryRow::epsilon);

  py::class_<agents::TrainResult>(m, "TrainResult")
      .def_readonly("policy", &agents::TrainResult::policy)
      .def_readonly("telemetry", &agents::TrainResult::telemetry)
      .def_readonly("zero_filter_batches", &agents::TrainResult::zero_filter_batches);

  m.def("train_bc",
        [](const data::Dataset& ds, const agents::AgentConfig& cfg) {
          return agents::train_offline(ds, cfg, true);
        },
        py::arg("dataset"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("train_offline",
        [](const data::Dataset& ds, const agents::AgentConfig& cfg) {
          return agents::train_offline(ds, cfg, false);
        },
        py::arg("dataset"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("train_online",
        [](const sim::SimConfig& sim_cfg, const agents::AgentConfig& cfg, const agents::Policy* warm,
           const data::Dataset* buffer_fill) {
          agents::SimTrainEnv env(sim_cfg);
          agents::WarmStart warm_start;
          warm_start.policy = warm;
          warm_start.buffer_fill = buffer_fill;
          return agents::train_online(env, cfg, warm_start);
        },
        py::arg("sim_config"), py::arg("config"), py::arg("warm_policy") = nullptr,
        py::arg("buffer_fill") = nullptr, py::keep_alive<0, 3>(), py::keep_alive<0, 4>(),
        py::call_guard<py::gil_scoped_release>());

  py::class_<eval::EvalReport>(m, "EvalReport")
      .def_readonly("per_rollout", &eval::EvalReport::per_rollout)
      .def_readonly("mean", &eval::EvalReport::mean)
      .def_readonly("ci95", &eval::EvalReport::ci95)
      .def_readonly("config_hash", &eval::EvalReport::config_hash)
      .def_readonly("seed", &eval::EvalReport::seed)
      .def_readonly("version", &eval::EvalReport::version)
      .def("min", &eval::EvalReport::min)
      .def("max", &eval::EvalReport::max);

  m.def("evaluate_policy", &eval::evaluate_policy, py::arg("policy"), py::arg("config"),
        py::arg("n_rollouts"), py::arg("steps"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("evaluate_actor",
        [](const std::string& policy, const sim::SimConfig& cfg, int n_rollouts, int steps,
           uint64_t seed) {
          const std::unique_ptr<data::Actor> actor = make_actor(policy, derive_seed(seed, 91));
          return eval::evaluate_actor(*actor, cfg, n_rollouts, steps, seed);
        },
        py::arg("policy"), py::arg("config"), py::arg("n_rollouts"), py::arg("steps"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("action_agreement",
        [](const agents::Policy& policy, const std::string& heuristic, const sim::SimConfig& cfg,
           int n_rollouts, int steps, uint64_t seed) {
          return eval::action_agreement(policy, heuristics::heuristic_from_string(heuristic), cfg,
                                        n_rollouts, steps, seed);
        },
        py::arg("policy"), py::arg("heuristic"), py::arg("config"), py::arg("n_rollouts"),
        py::arg("steps"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

  m.def("run_experiment",
        [](const std::string& spec_path) {
          const eval::ExperimentSpec spec = eval::ExperimentSpec::load(spec_path);
          eval::ExperimentResult res = [&] {
            py::gil_scoped_release release;
            return eval::run_experiment(spec);
          }();
          py::dict out;
          out["results"] = res.results_path;
          out["summary"] = res.summary_path;
          out["meta"] = res.meta_path;
          py::list failures;
          for (const eval::CellFailure& f : res.failures) failures.append(f.cell + ": " + f.error);
          out["failures"] = failures;
          return out;
        },
        py::arg("spec_path"));

  m.attr("heuristics") = py::make_tuple("sjf", "fcfs", "qos", "hvf");
}
