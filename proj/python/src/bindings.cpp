#include <algorithm>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "drxsim/checkpoint.hpp"
#include "drxsim/config.hpp"
#include "drxsim/experiment.hpp"

namespace py = pybind11;
using namespace drxsim;

namespace {

py::dict eval_row(const EvalRow& r) {
  py::dict d;
  d["policy"] = r.policy;
  d["action_space"] = r.action_space;
  d["num_ues"] = r.num_ues;
  d["ue_id"] = r.ue_id;
  d["activity"] = r.activity;
  d["mean_delay_ms"] = r.mean_delay_ms;
  d["delay_p5_ms"] = r.delay_p5_ms;
  d["delay_p50_ms"] = r.delay_p50_ms;
  d["delay_p95_ms"] = r.delay_p95_ms;
  d["satisfaction"] = r.satisfaction;
  return d;
}

py::dict summary(const EpisodeSummary& s) {
  py::dict d;
  d["run"] = s.run;
  d["episode"] = s.episode;
  d["num_ues"] = s.num_ues;
  d["epsilon"] = s.epsilon;
  d["cum_reward_per_ue"] = s.metrics.cum_reward_per_ue;
  d["mean_satisfaction"] = s.metrics.mean_satisfaction;
  d["mean_activity"] = s.metrics.mean_activity;
  d["transitions_stored"] = s.transitions_stored;
  d["last_loss"] = s.last_loss;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "TTI-level DRX simulator with DQN-driven MAC CE signaling";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<QueueOverflow>(m, "QueueOverflow", PyExc_RuntimeError);

  py::class_<ExperimentConfig>(m, "Config")
      .def(py::init<>())
      .def_static("from_text", &parse_config, py::arg("text"))
      .def_static("load", [](const std::string& p) { return load_config(p); }, py::arg("path"))
      .def("to_text", &ExperimentConfig::to_text)
      .def("validate", &ExperimentConfig::validate)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("num_ues", &ExperimentConfig::num_ues)
      .def_readwrite("action_space", &ExperimentConfig::action_space)
      .def_readwrite("runs", &ExperimentConfig::runs)
      .def_readwrite("episodes", &ExperimentConfig::episodes)
      .def_readwrite("eval_episodes", &ExperimentConfig::eval_episodes)
      .def_readwrite("steps_per_episode", &ExperimentConfig::steps_per_episode)
      .def_readwrite("batch_size", &ExperimentConfig::batch_size)
      .def_readwrite("erm_size", &ExperimentConfig::erm_size)
      .def_readwrite("learning_rate", &ExperimentConfig::learning_rate)
      .def_readwrite("rho", &ExperimentConfig::rho)
      .def_readwrite("beta", &ExperimentConfig::beta)
      .def_readwrite("delta_ms", &ExperimentConfig::delta_ms)
      .def_readwrite("queue_cap_bits", &ExperimentConfig::queue_cap_bits)
      .def("__repr__", &ExperimentConfig::to_text);

  m.def(
      "generate_arrivals",
      [](Tti horizon, std::uint64_t seed) {
        Rng rng = make_rng(seed, streams::kTraffic);
        std::vector<std::pair<Tti, Bits>> out;
        for (const auto& a : generate_arrivals(XrTrafficParams{}, horizon, rng))
          out.emplace_back(a.arrival_tti, a.size_bits);
        return out;
      },
      py::arg("horizon_ttis"), py::arg("seed") = 1,
      "Default XR arrivals as (tti, bits) pairs.");
  m.def("rho_from_doppler", &rho_from_doppler, py::arg("carrier_hz"), py::arg("velocity_mps"),
        py::arg("tti_s") = 1e-3);
  m.def(
      "select_tbs", [](double h_abs) { return select_tbs(Complex(h_abs, 0.0), PhyParams{}); },
      py::arg("h_abs"), "Transport block size in bits for a reported channel magnitude.");
  m.def(
      "tb_outcome",
      [](double h_abs, Bits tbs) { return tb_outcome(Complex(h_abs, 0.0), tbs, PhyParams{}); },
      py::arg("h_abs"), py::arg("tbs_bits"));
  m.def("huber", &huber, py::arg("residual"), py::arg("delta") = 1.0);
  m.def(
      "drx_listening_trace",
      [](Tti steps, const std::vector<Tti>& grants) {
        const DrxConfig cfg;
        DrxState s = initial_drx_state(cfg);
        std::vector<int> w;
        for (Tti t = 0; t < steps; ++t) {
          w.push_back(s.listening());
          const bool g = std::find(grants.begin(), grants.end(), t) != grants.end();
          s = drx_tick(s, cfg, t, g && s.listening());
        }
        return w;
      },
      py::arg("steps"), py::arg("grant_ttis") = std::vector<Tti>{},
      "Listening indicator per TTI for default timers and the given grant TTIs.");

  py::class_<QNetwork>(m, "QNetwork")
      .def(py::init<std::size_t>(), py::arg("num_actions"))
      .def("forward", [](const QNetwork& n, const std::vector<double>& x) { return n.forward(x); })
      .def_property_readonly("num_actions", &QNetwork::num_actions)
      .def_property(
          "params", [](const QNetwork& n) { return n.params(); },
          [](QNetwork& n, const std::vector<double>& p) {
            if (p.size() != n.params().size()) throw InvalidParameter("parameter count mismatch");
            n.params() = p;
          });

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_static("load", [](const std::string& p) { return load_checkpoint(p); }, py::arg("path"))
      .def_static("from_json", &checkpoint_from_json)
      .def("to_json", &checkpoint_to_json)
      .def("save", [](const Checkpoint& c, const std::string& p) { save_checkpoint(p, c); })
      .def_readonly("net", &Checkpoint::net)
      .def_property_readonly("episodes", [](const Checkpoint& c) { return c.meta.episodes; })
      .def_property_readonly("label", [](const Checkpoint& c) { return c.meta.label; })
      .def_property_readonly("cum_reward_per_ue",
                             [](const Checkpoint& c) { return c.meta.cum_reward_per_ue; });

  m.def(
      "evaluate",
      [](ExperimentConfig cfg, const std::string& policy, std::size_t num_ues,
         std::size_t episodes, const Checkpoint* ckpt) {
        const PolicyKind kind = policy_from_string(policy);
        if (ckpt) {
          cfg.action_space = ckpt->net.num_actions();
          cfg.norm = ckpt->norm;
        }
        EvalOptions eo;
        eo.episodes = episodes;
        EvalResult res;
        {
          py::gil_scoped_release release;
          res = evaluate(cfg, kind, ckpt ? &ckpt->net : nullptr, num_ues, eo);
        }
        py::list rows;
        for (const auto& r : res.rows) rows.append(eval_row(r));
        return rows;
      },
      py::arg("config"), py::arg("policy"), py::arg("num_ues"), py::arg("episodes") = 0,
      py::arg("checkpoint") = nullptr,
      "Per-UE evaluation rows for a policy at a fixed UE count.");

  m.def(
      "train",
      [](const ExperimentConfig& cfg, std::optional<std::string> out_dir) {
        TrainOptions opts;
        if (out_dir) opts.out_dir = *out_dir;
        TrainResult res;
        {
          py::gil_scoped_release release;
          res = train(cfg, opts);
        }
        py::list eps;
        for (const auto& s : res.episodes) eps.append(summary(s));
        return py::make_tuple(eps, res.best, res.final);
      },
      py::arg("config"), py::arg("out_dir") = py::none(),
      "Runs training; returns (episode summaries, best checkpoint, final checkpoint).");
}
