#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace drxsim {

/// TTI index. One TTI is 1 ms throughout the simulator.
using Tti = std::uint64_t;
using Bits = std::uint64_t;
using Rng = std::mt19937_64;

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal bookkeeping invariant breaks; the simulation
/// cannot continue meaningfully afterwards.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Derives an independent generator from a base seed and a (stream, sub)
/// label, so that e.g. UE 3's traffic does not depend on how many draws the
/// policy made.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub = 0);

namespace streams {
inline constexpr std::uint64_t kTraffic = 1;
inline constexpr std::uint64_t kChannel = 2;
inline constexpr std::uint64_t kPolicy = 3;
inline constexpr std::uint64_t kReplay = 4;
inline constexpr std::uint64_t kWeights = 5;
inline constexpr std::uint64_t kUeCount = 6;
inline constexpr std::uint64_t kEpisode = 7;
}  // namespace streams

}  // namespace drxsim
