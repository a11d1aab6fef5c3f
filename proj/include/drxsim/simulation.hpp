#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "drxsim/agent.hpp"
#include "drxsim/common.hpp"
#include "drxsim/config.hpp"
#include "drxsim/drx.hpp"
#include "drxsim/features.hpp"
#include "drxsim/mac.hpp"
#include "drxsim/metrics.hpp"
#include "drxsim/phy.hpp"
#include "drxsim/policies.hpp"
#include "drxsim/replay.hpp"
#include "drxsim/reward.hpp"
#include "drxsim/scheduler.hpp"
#include "drxsim/traffic.hpp"

namespace drxsim {

/// Raised when a downlink queue grows past the configured hard cap.
class QueueOverflow : public std::runtime_error {
 public:
  QueueOverflow(std::size_t ue, Tti t, Bits bits);
  std::size_t ue() const { return ue_; }
  Tti tti() const { return tti_; }
  Bits bits() const { return bits_; }

 private:
  std::size_t ue_;
  Tti tti_;
  Bits bits_;
};

/// How one episode is driven.
struct EpisodeOptions {
  PolicyKind policy = PolicyKind::TimersOnly;
  // Learned policy: network used for decisions. In training mode the
  // agent is also updated and `erm`/`train_rng` must be set.
  DqnAgent* agent = nullptr;
  ReplayMemory* erm = nullptr;
  Rng* train_rng = nullptr;
  bool training = false;
  double epsilon = 1e-6;
  bool enforce_queue_cap = false;
  bool record_trace = false;
};

/// What happened in one TTI, for tests and debugging.
struct TtiTrace {
  Tti t = 0;
  std::optional<std::size_t> scheduled_ue;
  Bits tbs_bits = 0;
  bool delivered = false;
  std::optional<MacCe> ce;            // CE actually sent
  Bits ce_ue_queue_bits = 0;          // queue of the CE's UE at decision time
  std::vector<int> actions;           // per UE; -1 when no decision was made
  std::vector<DrxState> drx;          // per UE, state governing t
};

struct PendingDecision {
  EncodedState s{};
  std::uint8_t a = 0;
  double r = 0.0;
  Tti tti = 0;
  bool keep = true;
};

/// Everything the BTS and one UE hold.
struct UeContext {
  explicit UeContext(std::size_t sigma_window, Tti delta) : window(sigma_window, delta) {}

  std::vector<SduArrival> arrivals;
  std::size_t next_arrival = 0;
  std::uint64_t next_sdu_id = 0;
  ChannelState channel;
  Rng channel_rng;
  DlQueue queue;

  DrxState ue_drx;   // UE side
  DrxState bts_drx;  // BTS mirror

  std::optional<TransportBlock> in_flight;
  bool in_flight_delivered = false;

  bool last_ack = false;
  bool last_scheduled = false;
  ResourceUsage last_usage = ResourceUsage::NotScheduled;
  FeatureHistory history;
  std::optional<PendingDecision> pending;
  std::size_t action = 0;

  SatisfactionWindow window;
  std::vector<Tti> delays;
  std::vector<std::uint8_t> listening_trace;
  std::uint64_t active_ttis = 0;
  double cum_reward = 0.0;
  Bits bits_enqueued = 0;
  Bits bits_acked = 0;
};

struct EpisodeResult {
  EpisodeLog log;
  EpisodeMetrics metrics;
  std::vector<double> streaming_activity;
  std::vector<TtiTrace> trace;
  std::uint64_t transitions_stored = 0;
  std::optional<double> last_loss;
};

/// One cell for one episode. The loop per TTI t is:
///  1. HARQ feedback of t-1 (queue update, delays, BTS-side CE)
///  2. CSI reports from listening UEs
///  3. policy decisions for listening UEs (ERM push of the previous decision)
///  4. round-robin grant and TB transmission
///  5. DRX timers at both ends
///  6. rewards and activity bookkeeping
///  7. traffic that arrived during t joins the queues
///  8. one DQN update (training only)
class Simulation {
 public:
  Simulation(const ExperimentConfig& cfg, std::size_t num_ues, std::uint64_t episode_seed,
             EpisodeOptions options);

  void run_tti();
  EpisodeResult run_episode();
  /// Closes the episode: terminal transitions and metrics.
  EpisodeResult finish();

  Tti now() const { return t_; }
  std::size_t num_ues() const { return ues_.size(); }
  const UeContext& ue(std::size_t u) const { return ues_.at(u); }
  const std::vector<TtiTrace>& trace() const { return trace_; }
  const std::vector<std::uint64_t>& action_histogram() const { return histogram_; }
  std::size_t action_space() const { return action_space_; }

 private:
  bool drx_enabled() const { return opts_.policy != PolicyKind::AlwaysOn; }
  bool bts_listening(const UeContext& ue) const { return !drx_enabled() || ue.bts_drx.listening(); }
  bool ue_listening(const UeContext& ue) const { return !drx_enabled() || ue.ue_drx.listening(); }
  std::size_t decide(UeContext& ue, std::size_t u, const CellObservation& cell);
  void store(const PendingDecision& p, std::size_t u, const EncodedState& next, bool terminal);

  ExperimentConfig cfg_;
  EpisodeOptions opts_;
  PhyParams phy_;
  DrxConfig drx_;
  std::size_t action_space_;
  std::vector<UeContext> ues_;
  RoundRobinScheduler rr_;
  Rng policy_rng_;
  Tti t_ = 0;
  std::vector<std::uint64_t> histogram_;
  std::vector<TtiTrace> trace_;
  Bits max_queue_bits_ = 0;
  std::uint64_t stored_ = 0;
  std::optional<double> last_loss_;
  bool finished_ = false;
};

}  // namespace drxsim
