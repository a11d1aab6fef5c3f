#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drxsim/common.hpp"
#include "drxsim/mac.hpp"
#include "drxsim/qnetwork.hpp"
#include "drxsim/replay.hpp"

namespace drxsim {

/// Maps an action index to the CE it sends.
///   |A| = 2: 0 no CE, 1 Long DRX command.
///   |A| = 7: 0 no CE, k = 1..6 PDCCH skipping for 2k TTIs.
std::optional<MacCe> action_to_ce(std::size_t action, std::size_t action_space);
/// Sleep length in ms the action stands for (0 for the null action; the
/// long-DRX command reports -1 since its length depends on the cycle phase).
int action_skip_ms(std::size_t action, std::size_t action_space);
void validate_action_space(std::size_t action_space);

/// argmax with exploration; inactive UEs always get the null action.
std::size_t select_action(std::span<const double> q, double epsilon, Rng& rng, bool ue_active);

struct EpsilonSchedule {
  double start = 0.8;
  double end = 1e-6;
  std::size_t step_episodes = 30;
  std::size_t decay_episodes = 300;

  /// Piecewise-constant exponential decay from start to end.
  double operator()(std::size_t episode) const;
};

enum class Optimizer { Adam, Sgd };
std::string to_string(Optimizer o);
Optimizer optimizer_from_string(const std::string& s);

struct AgentConfig {
  std::size_t action_space = 2;
  std::size_t hidden = QNetwork::kDefaultHidden;
  std::size_t batch_size = 256;
  double gamma = 1.0;
  double learning_rate = 1e-3;
  double huber_delta = 1.0;
  std::size_t target_sync_steps = 100;
  Optimizer optimizer = Optimizer::Adam;
  OutputActivation output = OutputActivation::Linear;
};

/// Online network, target copy and optimizer state.
class DqnAgent {
 public:
  explicit DqnAgent(const AgentConfig& cfg);
  DqnAgent(const AgentConfig& cfg, Rng& init_rng);

  std::vector<double> q_values(std::span<const double> x) const { return online_.forward(x); }

  /// One minibatch update; nullopt when the memory holds fewer transitions
  /// than a batch.
  std::optional<double> train_step(const ReplayMemory& erm, Rng& rng);

  /// Copies online weights into the target network.
  void sync_target() { target_ = online_; }

  /// Replaces both networks (used when loading a checkpoint).
  void set_network(const QNetwork& net);

  const QNetwork& online() const { return online_; }
  const QNetwork& target() const { return target_; }
  QNetwork& online() { return online_; }
  const AgentConfig& config() const { return cfg_; }
  std::size_t train_steps() const { return steps_; }

 private:
  void apply_gradient(const std::vector<double>& grad);

  AgentConfig cfg_;
  QNetwork online_;
  QNetwork target_;
  std::size_t steps_ = 0;
  // Adam moments
  std::vector<double> m_;
  std::vector<double> v_;
  std::vector<double> grad_;
};

}  // namespace drxsim
