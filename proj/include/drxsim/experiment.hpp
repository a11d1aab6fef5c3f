#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drxsim/checkpoint.hpp"
#include "drxsim/config.hpp"
#include "drxsim/metrics.hpp"
#include "drxsim/policies.hpp"
#include "drxsim/simulation.hpp"

namespace drxsim {

/// Categorical draw of the UE count; weights[i] is the weight of U = i + 1.
std::size_t sample_num_ues(Rng& rng, std::span<const double> weights);

/// Seed of episode `episode` in a stream identified by `base_seed`.
std::uint64_t episode_seed(std::uint64_t base_seed, std::uint64_t episode);
/// Evaluation episodes use a seed family disjoint from training.
std::uint64_t eval_episode_seed(std::uint64_t base_seed, std::uint64_t episode);

struct EpisodeSummary {
  std::size_t run = 0;
  std::size_t episode = 0;
  std::size_t num_ues = 0;
  double epsilon = 0.0;
  EpisodeMetrics metrics;
  std::uint64_t transitions_stored = 0;
  std::optional<double> last_loss;
};

struct TrainOptions {
  std::optional<std::filesystem::path> out_dir;  // CSV and checkpoints when set
  std::vector<std::size_t> run_indices;          // empty: 0 .. cfg.runs-1
  std::function<void(const EpisodeSummary&)> on_episode;
  /// Called after every episode with the live replay memory (for audits).
  std::function<void(const EpisodeSummary&, const ReplayMemory&, const EpisodeResult&)> inspect;
};

struct TrainResult {
  std::vector<EpisodeSummary> episodes;
  Checkpoint best;   // highest episode cum. reward per UE over all runs
  Checkpoint final;  // weights after the last episode of the last run
};

/// Runs the training protocol: per run a fresh agent and ERM seeded with
/// cfg.seed + run; per episode a fresh cell with a UE count drawn from the
/// configured distribution (or fixed by cfg.num_ues) and epsilon from the
/// schedule.
TrainResult train(const ExperimentConfig& cfg, const TrainOptions& opts = {});

struct EvalResult {
  std::vector<EvalRow> rows;        // one per UE
  std::vector<ActionRow> actions;   // one per action index
  std::vector<EpisodeMetrics> episodes;
  std::vector<EpisodeResult> raw;   // filled only when keep_raw is set
};

struct EvalOptions {
  std::size_t episodes = 0;  // 0: cfg.eval_episodes
  bool keep_raw = false;
  bool record_trace = false;
  bool enforce_queue_cap = true;
  std::optional<double> epsilon;  // default cfg.eval_epsilon
};

/// Fixed-U evaluation without learning. `net` is required for the learned
/// policy and must match cfg.action_space.
EvalResult evaluate(const ExperimentConfig& cfg, PolicyKind policy, const QNetwork* net,
                    std::size_t num_ues, const EvalOptions& opts = {});

void write_eval(const std::filesystem::path& out_dir, const EvalResult& res);

}  // namespace drxsim
