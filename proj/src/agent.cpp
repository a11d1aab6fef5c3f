#include "drxsim/agent.hpp"

#include <algorithm>
#include <cmath>

namespace drxsim {

void validate_action_space(std::size_t action_space) {
  if (action_space != 2 && action_space != 7)
    throw InvalidParameter("action space must be 2 or 7, got " + std::to_string(action_space));
}

std::optional<MacCe> action_to_ce(std::size_t action, std::size_t action_space) {
  validate_action_space(action_space);
  if (action >= action_space) throw InvalidParameter("action index out of range");
  if (action == 0) return std::nullopt;
  if (action_space == 2) return MacCe::long_drx();
  return MacCe::skip(2 * action);
}

int action_skip_ms(std::size_t action, std::size_t action_space) {
  validate_action_space(action_space);
  if (action == 0) return 0;
  if (action_space == 2) return -1;
  return static_cast<int>(2 * action);
}

std::size_t select_action(std::span<const double> q, double epsilon, Rng& rng, bool ue_active) {
  if (!ue_active) return 0;
  if (q.empty()) throw InvalidParameter("empty Q vector");
  if (epsilon > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
      std::uniform_int_distribution<std::size_t> pick(0, q.size() - 1);
      return pick(rng);
    }
  }
  return static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
}

double EpsilonSchedule::operator()(std::size_t episode) const {
  if (episode >= decay_episodes) return end;
  const double steps = static_cast<double>(decay_episodes) / static_cast<double>(step_episodes);
  const double k = std::pow(end / start, 1.0 / steps);
  return start * std::pow(k, static_cast<double>(episode / step_episodes));
}

std::string to_string(Optimizer o) { return o == Optimizer::Adam ? "adam" : "sgd"; }

Optimizer optimizer_from_string(const std::string& s) {
  if (s == "adam") return Optimizer::Adam;
  if (s == "sgd") return Optimizer::Sgd;
  throw InvalidParameter("unknown optimizer '" + s + "'");
}

DqnAgent::DqnAgent(const AgentConfig& cfg)
    : cfg_(cfg),
      online_(cfg.action_space, kStateSize, cfg.hidden, cfg.output),
      target_(online_) {
  validate_action_space(cfg.action_space);
  if (cfg.batch_size == 0) throw InvalidParameter("batch size must be >= 1");
  if (cfg.target_sync_steps == 0) throw InvalidParameter("target sync period must be >= 1");
  m_.assign(online_.params().size(), 0.0);
  v_.assign(online_.params().size(), 0.0);
}

DqnAgent::DqnAgent(const AgentConfig& cfg, Rng& init_rng) : DqnAgent(cfg) {
  online_.init_random(init_rng);
  target_ = online_;
}

void DqnAgent::set_network(const QNetwork& net) {
  if (net.num_actions() != cfg_.action_space)
    throw InvalidParameter("network action space does not match agent configuration");
  online_ = net;
  target_ = net;
  m_.assign(online_.params().size(), 0.0);
  v_.assign(online_.params().size(), 0.0);
}

std::optional<double> DqnAgent::train_step(const ReplayMemory& erm, Rng& rng) {
  if (erm.size() < cfg_.batch_size) return std::nullopt;

  const auto idx = erm.sample_indices(cfg_.batch_size, rng);
  std::vector<QSample> batch;
  batch.reserve(idx.size());
  for (std::size_t i : idx) {
    const Transition& tr = erm.slot(i);
    double y = tr.r;
    if (!tr.terminal && cfg_.gamma != 0.0) {
      const auto next_q = target_.forward(tr.s_next);
      y += cfg_.gamma * *std::max_element(next_q.begin(), next_q.end());
    }
    batch.push_back({tr.s, tr.a, y});
  }

  const double loss = online_.loss_and_gradient(batch, grad_, cfg_.huber_delta);
  apply_gradient(grad_);
  ++steps_;
  if (steps_ % cfg_.target_sync_steps == 0) sync_target();
  return loss;
}

void DqnAgent::apply_gradient(const std::vector<double>& grad) {
  auto& p = online_.params();
  if (cfg_.optimizer == Optimizer::Sgd) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= cfg_.learning_rate * grad[i];
    return;
  }
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-7;
  const double t = static_cast<double>(steps_ + 1);
  const double c1 = 1.0 - std::pow(kBeta1, t);
  const double c2 = 1.0 - std::pow(kBeta2, t);
  for (std::size_t i = 0; i < p.size(); ++i) {
    m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
    v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
    p[i] -= cfg_.learning_rate * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEps);
  }
}

}  // namespace drxsim
