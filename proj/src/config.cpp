#include "drxsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace drxsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  double x = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw InvalidParameter("expected a number, got '" + v + "'");
  return x;
}

std::uint64_t to_natural(const std::string& v) {
  // Accepts 100000 as well as 1e5.
  const double x = to_double(v);
  if (x < 0.0 || std::floor(x) != x || x > 9.0e15)
    throw InvalidParameter("expected a non-negative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(x);
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field natural(T ExperimentConfig::*member) {
  return {[member](ExperimentConfig& c, const std::string& v) {
            c.*member = static_cast<T>(to_natural(v));
          },
          [member](const ExperimentConfig& c) { return std::to_string(c.*member); }};
}

Field real(double ExperimentConfig::*member) {
  return {[member](ExperimentConfig& c, const std::string& v) { c.*member = to_double(v); },
          [member](const ExperimentConfig& c) { return fmt(c.*member); }};
}

template <typename Get>
Field real_at(Get get) {
  return {[get](ExperimentConfig& c, const std::string& v) { get(c) = to_double(v); },
          [get](const ExperimentConfig& c) { return fmt(get(const_cast<ExperimentConfig&>(c))); }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"tti_ms", real(&ExperimentConfig::tti_ms)},
      {"bandwidth_mhz", real(&ExperimentConfig::bandwidth_mhz)},
      {"bw_eff_hz", real(&ExperimentConfig::bw_eff_hz)},
      {"rho", real(&ExperimentConfig::rho)},
      {"csi_period_ms", natural(&ExperimentConfig::csi_period_ms)},
      {"snr_db", real(&ExperimentConfig::snr_db)},
      {"drx_inactivity_timer_ms", natural(&ExperimentConfig::drx_inactivity_timer_ms)},
      {"drx_on_duration_timer_ms", natural(&ExperimentConfig::drx_on_duration_timer_ms)},
      {"drx_long_cycle_ms", natural(&ExperimentConfig::drx_long_cycle_ms)},
      {"drx_cycle_offset_ms", natural(&ExperimentConfig::drx_cycle_offset_ms)},
      {"num_ues", natural(&ExperimentConfig::num_ues)},
      {"ue_count_weights",
       {[](ExperimentConfig& c, const std::string& v) {
          c.ue_count_weights.clear();
          std::istringstream in(v);
          std::string item;
          while (std::getline(in, item, ',')) c.ue_count_weights.push_back(to_double(trim(item)));
        },
        [](const ExperimentConfig& c) {
          std::string s;
          for (std::size_t i = 0; i < c.ue_count_weights.size(); ++i)
            s += (i ? "," : "") + fmt(c.ue_count_weights[i]);
          return s;
        }}},
      {"frame_interval_ms", real_at([](ExperimentConfig& c) -> double& { return c.traffic.frame_interval_ms; })},
      {"mean_packet_bits",
       {[](ExperimentConfig& c, const std::string& v) { c.traffic.mean_packet_bits = to_natural(v); },
        [](const ExperimentConfig& c) { return std::to_string(c.traffic.mean_packet_bits); }}},
      {"packet_size_std_frac", real_at([](ExperimentConfig& c) -> double& { return c.traffic.size_std_frac; })},
      {"packet_size_min_frac", real_at([](ExperimentConfig& c) -> double& { return c.traffic.size_min_frac; })},
      {"packet_size_max_frac", real_at([](ExperimentConfig& c) -> double& { return c.traffic.size_max_frac; })},
      {"jitter_std_ms", real_at([](ExperimentConfig& c) -> double& { return c.traffic.jitter_std_ms; })},
      {"jitter_min_ms", real_at([](ExperimentConfig& c) -> double& { return c.traffic.jitter_min_ms; })},
      {"jitter_max_ms", real_at([](ExperimentConfig& c) -> double& { return c.traffic.jitter_max_ms; })},
      {"erm_size", natural(&ExperimentConfig::erm_size)},
      {"batch_size", natural(&ExperimentConfig::batch_size)},
      {"action_space", natural(&ExperimentConfig::action_space)},
      {"hidden_neurons", natural(&ExperimentConfig::hidden_neurons)},
      {"output_activation",
       {[](ExperimentConfig& c, const std::string& v) {
          c.output_activation = output_activation_from_string(v);
        },
        [](const ExperimentConfig& c) { return to_string(c.output_activation); }}},
      {"huber_delta", real(&ExperimentConfig::huber_delta)},
      {"target_sync_steps", natural(&ExperimentConfig::target_sync_steps)},
      {"train_every_ttis", natural(&ExperimentConfig::train_every_ttis)},
      {"sigma_window", natural(&ExperimentConfig::sigma_window)},
      {"gamma", real(&ExperimentConfig::gamma)},
      {"learning_rate", real(&ExperimentConfig::learning_rate)},
      {"optimizer",
       {[](ExperimentConfig& c, const std::string& v) { c.optimizer = optimizer_from_string(v); },
        [](const ExperimentConfig& c) { return to_string(c.optimizer); }}},
      {"runs", natural(&ExperimentConfig::runs)},
      {"episodes", natural(&ExperimentConfig::episodes)},
      {"eval_episodes", natural(&ExperimentConfig::eval_episodes)},
      {"steps_per_episode", natural(&ExperimentConfig::steps_per_episode)},
      {"epsilon_start", real_at([](ExperimentConfig& c) -> double& { return c.epsilon.start; })},
      {"epsilon_end", real_at([](ExperimentConfig& c) -> double& { return c.epsilon.end; })},
      {"epsilon_step_episodes",
       {[](ExperimentConfig& c, const std::string& v) { c.epsilon.step_episodes = to_natural(v); },
        [](const ExperimentConfig& c) { return std::to_string(c.epsilon.step_episodes); }}},
      {"epsilon_decay_episodes",
       {[](ExperimentConfig& c, const std::string& v) { c.epsilon.decay_episodes = to_natural(v); },
        [](const ExperimentConfig& c) { return std::to_string(c.epsilon.decay_episodes); }}},
      {"eval_epsilon", real(&ExperimentConfig::eval_epsilon)},
      {"beta", real(&ExperimentConfig::beta)},
      {"delta_ms", natural(&ExperimentConfig::delta_ms)},
      {"q_sat_bits", natural(&ExperimentConfig::q_sat_bits)},
      {"queue_cap_bits", natural(&ExperimentConfig::queue_cap_bits)},
      {"norm_ttnc_ttis", real_at([](ExperimentConfig& c) -> double& { return c.norm.ttnc_scale; })},
      {"norm_age_ttis", real_at([](ExperimentConfig& c) -> double& { return c.norm.age_scale; })},
      {"norm_queue_bits", real_at([](ExperimentConfig& c) -> double& { return c.norm.queue_sat_bits; })},
      {"norm_remaining_ttis", real_at([](ExperimentConfig& c) -> double& { return c.norm.remaining_scale; })},
      {"norm_max_ues", real_at([](ExperimentConfig& c) -> double& { return c.norm.max_ues; })},
      {"seed", natural(&ExperimentConfig::seed)},
  };
  return table;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter("config: " + what);
}

}  // namespace

void ExperimentConfig::validate() const {
  require(tti_ms == 1.0, "tti_ms must be 1 (the simulator runs at 1 ms resolution)");
  require(bandwidth_mhz > 0.0, "bandwidth_mhz must be > 0");
  require(bw_eff_hz > 0.0, "bw_eff_hz must be > 0");
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
  require(csi_period_ms >= 1, "csi_period_ms must be >= 1");
  require(std::isfinite(snr_db), "snr_db must be finite");
  require(num_ues <= 9, "num_ues must be 0 (random) or in [1, 9]");
  require(ue_count_weights.size() == 9, "ue_count_weights needs 9 entries (U = 1..9)");
  double wsum = 0.0;
  for (double w : ue_count_weights) {
    require(w >= 0.0, "ue_count_weights must be non-negative");
    wsum += w;
  }
  require(wsum > 0.0, "ue_count_weights must not all be zero");
  traffic.validate();
  drx().validate();
  validate_action_space(action_space);
  require(erm_size >= 1, "erm_size must be >= 1");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(hidden_neurons >= 1, "hidden_neurons must be >= 1");
  require(huber_delta > 0.0, "huber_delta must be > 0");
  require(target_sync_steps >= 1, "target_sync_steps must be >= 1");
  require(train_every_ttis >= 1, "train_every_ttis must be >= 1");
  require(sigma_window >= 1, "sigma_window must be >= 1");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must lie in [0, 1]");
  require(learning_rate > 0.0, "learning_rate must be > 0");
  require(runs >= 1, "runs must be >= 1");
  require(episodes >= 1, "episodes must be >= 1");
  require(eval_episodes >= 1, "eval_episodes must be >= 1");
  require(steps_per_episode >= 1, "steps_per_episode must be >= 1");
  require(epsilon.start >= 0.0 && epsilon.start <= 1.0, "epsilon_start must lie in [0, 1]");
  require(epsilon.end > 0.0 && epsilon.end <= epsilon.start, "epsilon_end must lie in (0, start]");
  require(epsilon.step_episodes >= 1, "epsilon_step_episodes must be >= 1");
  require(epsilon.decay_episodes >= epsilon.step_episodes,
          "epsilon_decay_episodes must be >= epsilon_step_episodes");
  require(eval_epsilon >= 0.0 && eval_epsilon <= 1.0, "eval_epsilon must lie in [0, 1]");
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(delta_ms >= 1, "delta_ms must be >= 1");
  require(q_sat_bits >= 1, "q_sat_bits must be >= 1");
  require(queue_cap_bits >= q_sat_bits, "queue_cap_bits must be >= q_sat_bits");
  require(norm.ttnc_scale > 0 && norm.age_scale > 0 && norm.queue_sat_bits > 0 &&
              norm.remaining_scale > 0 && norm.max_ues > 0,
          "normalization constants must be > 0");
}

PhyParams ExperimentConfig::phy() const {
  PhyParams p;
  p.rho = rho;
  p.snr_linear = std::pow(10.0, snr_db / 10.0);
  p.bw_eff_hz = bw_eff_hz;
  p.tti_s = tti_ms * 1e-3;
  p.csi_period_ttis = csi_period_ms;
  return p;
}

DrxConfig ExperimentConfig::drx() const {
  return {drx_long_cycle_ms, drx_on_duration_timer_ms, drx_inactivity_timer_ms,
          drx_cycle_offset_ms};
}

AgentConfig ExperimentConfig::agent() const {
  AgentConfig a;
  a.action_space = action_space;
  a.hidden = hidden_neurons;
  a.batch_size = batch_size;
  a.gamma = gamma;
  a.learning_rate = learning_rate;
  a.huber_delta = huber_delta;
  a.target_sync_steps = target_sync_steps;
  a.optimizer = optimizer;
  a.output = output_activation;
  return a;
}

std::string ExperimentConfig::to_text() const {
  std::string out;
  for (const auto& [key, field] : fields()) out += key + " = " + field.get(*this) + "\n";
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  static const std::map<std::string, const Field*> index = [] {
    std::map<std::string, const Field*> m;
    for (const auto& [k, f] : fields()) m.emplace(k, &f);
    return m;
  }();

  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno);
    if (eq == std::string::npos) throw InvalidParameter(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = index.find(key);
    if (it == index.end()) throw InvalidParameter(where + ": unknown key '" + key + "'");
    try {
      it->second->set(cfg, value);
    } catch (const InvalidParameter& e) {
      throw InvalidParameter(where + " (" + key + "): " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(path.string() + ": " + e.what());
  }
}

}  // namespace drxsim
