#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "drxsim/agent.hpp"
#include "drxsim/common.hpp"
#include "drxsim/drx.hpp"
#include "drxsim/features.hpp"
#include "drxsim/phy.hpp"
#include "drxsim/traffic.hpp"

namespace drxsim {

/// Every tunable of an experiment. Defaults reproduce the reference system
/// settings and RL hyperparameters.
struct ExperimentConfig {
  // System settings
  double tti_ms = 1.0;
  double bandwidth_mhz = 100.0;
  double bw_eff_hz = 72e6;
  double rho = 0.99;
  Tti csi_period_ms = 10;
  double snr_db = 10.0;
  Tti drx_inactivity_timer_ms = 8;
  Tti drx_on_duration_timer_ms = 8;
  Tti drx_long_cycle_ms = 16;
  Tti drx_cycle_offset_ms = 0;
  std::size_t num_ues = 0;  // 0: draw per episode from ue_count_weights
  std::vector<double> ue_count_weights{1, 1, 1, 1, 1, 1, 1, 2.5, 2.5};
  XrTrafficParams traffic;

  // RL hyperparameters
  std::size_t erm_size = 100'000;
  std::size_t batch_size = 256;
  std::size_t action_space = 2;
  std::size_t hidden_neurons = 40;
  OutputActivation output_activation = OutputActivation::Linear;
  double huber_delta = 1.0;
  std::size_t target_sync_steps = 100;
  std::size_t train_every_ttis = 100;  // one gradient step per 100 TTIs
  std::size_t sigma_window = 20;
  double gamma = 1.0;
  double learning_rate = 1e-3;
  Optimizer optimizer = Optimizer::Adam;
  std::size_t runs = 30;
  std::size_t episodes = 750;
  std::size_t eval_episodes = 250;
  Tti steps_per_episode = 8000;
  EpsilonSchedule epsilon;
  double eval_epsilon = 1e-6;
  double beta = 0.95;
  Tti delta_ms = 20;

  // Guards
  Bits q_sat_bits = 2'000'000;
  Bits queue_cap_bits = 50'000'000;

  // Feature scaling
  Normalization norm;

  std::uint64_t seed = 1;

  void validate() const;

  PhyParams phy() const;
  DrxConfig drx() const;
  AgentConfig agent() const;

  /// One `key = value` line per field, in a stable order.
  std::string to_text() const;
};

/// Parses flat `key = value` text; `#` starts a comment. Unknown keys and
/// out-of-range values throw InvalidParameter naming the line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace drxsim
