#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "drxsim/features.hpp"
#include "drxsim/qnetwork.hpp"

namespace drxsim {

struct CheckpointMeta {
  std::size_t episodes = 0;        // episodes trained when the weights were taken
  std::uint64_t seed = 0;
  std::size_t run = 0;
  double cum_reward_per_ue = 0.0;  // episode score that selected these weights
  std::string label;               // "best" or "final"
};

struct Checkpoint {
  QNetwork net{2};
  Normalization norm;
  CheckpointMeta meta;
};

/// JSON document with the layer sizes, row-major weights and biases,
/// feature scaling and training metadata. Doubles round-trip exactly.
std::string checkpoint_to_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace drxsim
