#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "drxsim/common.hpp"
#include "drxsim/drx.hpp"
#include "drxsim/mac.hpp"

namespace drxsim {

/// How the previous TTI's radio resources were used for a UE.
enum class ResourceUsage : std::uint8_t {
  DeliveredPayload = 0,
  DeliveredNoPayload = 1,
  Failed = 2,
  NotScheduled = 3,
};

/// One observation frame for one UE, taken at the policy-execution point of
/// a TTI. Everything here describes outcomes up to the previous TTI or the
/// DRX state the BTS mirror holds for the current one.
struct StateFeatures {
  bool ack = false;        // TB of t-1 decoded
  bool scheduled = false;  // UE held the grant at t-1
  Tti ttnc = 0;            // TTIs to the next long-cycle start
  Tti age = 0;             // age of the oldest queued SDU
  Bits queue_bits = 0;
  Tti remaining_state = 0;
  ResourceUsage resource_usage = ResourceUsage::DeliveredPayload;
  std::size_t n_active_ues = 0;
  Bits total_queue_bits = 0;
};

struct Normalization {
  double ttnc_scale = 16.0;
  double age_scale = 20.0;
  double queue_sat_bits = 2e6;
  double remaining_scale = 16.0;
  double max_ues = 9.0;
};

inline constexpr std::size_t kFrameSize = 12;
inline constexpr std::size_t kHistoryFrames = 3;
inline constexpr std::size_t kStateSize = kFrameSize * kHistoryFrames;

using EncodedFrame = std::array<double, kFrameSize>;
using EncodedState = std::array<double, kStateSize>;

struct UeObservation {
  bool last_ack = false;
  bool last_scheduled = false;
  ResourceUsage last_usage = ResourceUsage::NotScheduled;
  const DlQueue* queue = nullptr;
  DrxState drx;
};

struct CellObservation {
  std::size_t n_active_ues = 0;
  Bits total_queue_bits = 0;
};

StateFeatures build_features(const UeObservation& ue, const CellObservation& cell,
                             const DrxConfig& cfg, Tti t);

/// Per-frame layout: ack, scheduled, ttnc, age, queue, remaining,
/// one-hot(resource usage) x4, active UEs, total queue. All in [0, 1].
EncodedFrame encode_frame(const StateFeatures& f, const Normalization& norm);

/// Concatenates three frames, oldest first.
EncodedState encode(const std::array<StateFeatures, kHistoryFrames>& frames,
                    const Normalization& norm);

/// Sliding window of the last three encoded frames of a UE. Slots that
/// have not been filled yet in the episode read as zeros.
class FeatureHistory {
 public:
  void push(const EncodedFrame& frame);
  EncodedState state() const;
  std::size_t filled() const { return filled_; }

 private:
  std::array<EncodedFrame, kHistoryFrames> frames_{};  // oldest first
  std::size_t filled_ = 0;
};

}  // namespace drxsim
