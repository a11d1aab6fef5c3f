#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drxsim/common.hpp"

namespace drxsim {

/// Nearest-rank percentile of an ascending list: element ceil(q/100 * n).
double nearest_rank_percentile(std::span<const Tti> sorted, double q);

/// Raw record of one finished episode.
struct EpisodeLog {
  Tti steps = 0;
  Tti delta = 20;
  std::vector<std::vector<std::uint8_t>> listening;  // [ue][t] = W_u(t)
  std::vector<std::vector<Tti>> delays;              // [ue] per delivered SDU
  std::vector<double> cum_reward;                    // [ue]
  std::vector<double> final_window_satisfaction;     // [ue]
  std::vector<std::uint64_t> action_histogram;
  Bits max_queue_bits = 0;
};

struct UeMetrics {
  double activity = 0.0;
  std::size_t delivered = 0;
  std::optional<double> mean_delay;
  std::optional<double> delay_p5;
  std::optional<double> delay_p50;
  std::optional<double> delay_p95;
  double satisfaction = 1.0;        // fraction of the episode's SDUs within delta
  double satisfaction_final = 1.0;  // sliding-window value at the last TTI
  double cum_reward = 0.0;
};

struct EpisodeMetrics {
  std::vector<UeMetrics> ues;
  std::size_t num_ues = 0;
  double cum_reward_per_ue = 0.0;
  double mean_satisfaction = 0.0;
  double mean_activity = 0.0;
  std::vector<std::uint64_t> action_histogram;
  Bits max_queue_bits = 0;
};

EpisodeMetrics finalize(const EpisodeLog& log);

/// Delay statistics over a pooled delay list (used when aggregating
/// several evaluation episodes).
struct DelaySummary {
  std::optional<double> mean, p5, p50, p95;
  double satisfaction = 1.0;
};
DelaySummary summarize_delays(std::vector<Tti> delays, Tti delta);

// ---------------------------------------------------------------------------
// CSV outputs. Delays are in milliseconds (one TTI = 1 ms).

struct LearningCurveRow {
  std::size_t run = 0;
  std::size_t episode = 0;
  std::size_t num_ues = 0;
  double epsilon = 0.0;
  double cum_reward_per_ue = 0.0;
  double mean_satisfaction = 0.0;

  static const char* header();
  std::string to_csv() const;
  static LearningCurveRow parse(const std::string& line);
  bool operator==(const LearningCurveRow&) const = default;
};

struct EvalRow {
  std::string policy;
  std::size_t action_space = 2;
  std::size_t num_ues = 0;
  std::size_t ue_id = 0;
  double activity = 0.0;
  std::optional<double> mean_delay_ms;
  std::optional<double> delay_p5_ms;
  std::optional<double> delay_p50_ms;
  std::optional<double> delay_p95_ms;
  double satisfaction = 0.0;

  static const char* header();
  std::string to_csv() const;
  static EvalRow parse(const std::string& line);
  bool operator==(const EvalRow&) const = default;
};

struct ActionRow {
  std::string policy;
  std::size_t action_space = 2;
  std::size_t action_index = 0;
  int skip_ms = 0;
  std::uint64_t count = 0;
  double frequency = 0.0;

  static const char* header();
  std::string to_csv() const;
  static ActionRow parse(const std::string& line);
  bool operator==(const ActionRow&) const = default;
};

/// Appends rows to a CSV file, writing the header only when the file is
/// new or empty.
template <typename Row>
class CsvAppender {
 public:
  explicit CsvAppender(std::filesystem::path path);
  void write(const Row& row);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace drxsim
