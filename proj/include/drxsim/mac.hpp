#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "drxsim/common.hpp"

namespace drxsim {

/// Downlink MAC control element carried inside a transport block.
struct MacCe {
  enum class Kind { LongDrxCommand, SkipDuration };

  Kind kind = Kind::LongDrxCommand;
  Tti skip_ttis = 0;  // meaningful for SkipDuration only

  static MacCe long_drx() { return {Kind::LongDrxCommand, 0}; }
  /// PDCCH skipping for an even number of TTIs in [2, 12].
  static MacCe skip(Tti ttis);

  bool operator==(const MacCe&) const = default;
};

inline constexpr Tti kMaxSkipTtis = 12;

struct Sdu {
  std::uint64_t id = 0;
  Tti arrival_tti = 0;
  Bits size_bits = 0;
  Bits bits_remaining = 0;
  std::optional<Tti> delivered_tti;

  bool operator==(const Sdu&) const = default;
};

/// FIFO of SDUs awaiting acknowledged delivery. Bits leave the queue only
/// when the TB carrying them is acknowledged.
class DlQueue {
 public:
  /// Appends an SDU; its bits_remaining is reset to its full size.
  void enqueue(Sdu sdu);

  Bits total_bits() const { return total_bits_; }
  bool empty() const { return pending_.empty(); }
  std::size_t size() const { return pending_.size(); }
  const std::deque<Sdu>& pending() const { return pending_; }
  const Sdu& head() const { return pending_.front(); }

  bool operator==(const DlQueue&) const = default;

 private:
  friend struct QueueMutator;
  std::deque<Sdu> pending_;
  Bits total_bits_ = 0;
};

struct Segment {
  std::uint64_t sdu_id = 0;
  Bits bits = 0;

  bool operator==(const Segment&) const = default;
};

struct TransportBlock {
  std::size_t ue_id = 0;
  Tti tti = 0;
  Bits tbs_bits = 0;
  std::vector<Segment> segments;
  std::optional<MacCe> ce;
  Bits padding_bits = 0;

  Bits payload_bits() const;
  bool has_payload() const { return !segments.empty(); }
};

/// Fills a TB of `tbs_bits` from the queue head. The queue itself is left
/// untouched; see process_feedback.
TransportBlock assemble_tb(const DlQueue& queue, std::size_t ue_id, Bits tbs_bits,
                           std::optional<MacCe> ce, Tti tti);

struct DeliveredSdu {
  std::uint64_t sdu_id = 0;
  Tti arrival_tti = 0;
  Tti delay_ttis = 0;
};

struct FeedbackResult {
  std::vector<DeliveredSdu> delivered;
  bool ce_applied = false;
};

/// HARQ feedback for `tb`. On ACK the TB's segments are removed from the
/// queue head and every SDU that completes is reported with its delay,
/// measured to the TB's transmission TTI. On NACK nothing changes.
FeedbackResult process_feedback(DlQueue& queue, const TransportBlock& tb, bool delivered,
                                Tti feedback_tti);

}  // namespace drxsim
