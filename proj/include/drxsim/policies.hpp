#pragma once

#include <cstddef>
#include <string>

#include "drxsim/common.hpp"

namespace drxsim {

enum class PolicyKind { AlwaysOn, TimersOnly, Naive, Random, RlLearned };

std::string to_string(PolicyKind k);
/// Accepts the CLI spellings always_on, timers, naive, random, rl.
PolicyKind policy_from_string(const std::string& s);

/// Policies that never send a CE.
inline bool is_ce_free(PolicyKind k) {
  return k == PolicyKind::AlwaysOn || k == PolicyKind::TimersOnly;
}
/// Policies guarded by the queue-saturation rule.
inline bool is_stabilized(PolicyKind k) {
  return k == PolicyKind::Naive || k == PolicyKind::Random || k == PolicyKind::RlLearned;
}

/// Baseline decision for an active UE, in the legacy two-action space
/// (0: nothing, 1: Long DRX command). Not defined for RlLearned.
std::size_t decide_baseline(PolicyKind kind, Bits queue_bits, Rng& rng);

/// Suppresses any CE while the queue is saturated.
std::size_t stabilize(std::size_t action, Bits queue_bits, Bits q_sat);

}  // namespace drxsim
