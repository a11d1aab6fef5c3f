#include "drxsim/policies.hpp"

namespace drxsim {

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::AlwaysOn: return "always_on";
    case PolicyKind::TimersOnly: return "timers";
    case PolicyKind::Naive: return "naive";
    case PolicyKind::Random: return "random";
    case PolicyKind::RlLearned: return "rl";
  }
  return "?";
}

PolicyKind policy_from_string(const std::string& s) {
  if (s == "always_on") return PolicyKind::AlwaysOn;
  if (s == "timers") return PolicyKind::TimersOnly;
  if (s == "naive") return PolicyKind::Naive;
  if (s == "random") return PolicyKind::Random;
  if (s == "rl") return PolicyKind::RlLearned;
  throw InvalidParameter("unknown policy '" + s + "'");
}

std::size_t decide_baseline(PolicyKind kind, Bits queue_bits, Rng& rng) {
  switch (kind) {
    case PolicyKind::AlwaysOn:
    case PolicyKind::TimersOnly:
      return 0;
    case PolicyKind::Naive:
      return queue_bits == 0 ? 1 : 0;
    case PolicyKind::Random: {
      std::bernoulli_distribution coin(0.5);
      return coin(rng) ? 1 : 0;
    }
    case PolicyKind::RlLearned:
      break;
  }
  throw InvalidParameter("decide_baseline called for the learned policy");
}

std::size_t stabilize(std::size_t action, Bits queue_bits, Bits q_sat) {
  return queue_bits >= q_sat ? 0 : action;
}

}  // namespace drxsim
