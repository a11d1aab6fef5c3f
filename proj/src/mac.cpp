#include "drxsim/mac.hpp"

#include <algorithm>
#include <string>

namespace drxsim {

MacCe MacCe::skip(Tti ttis) {
  if (ttis == 0 || ttis % 2 != 0 || ttis > kMaxSkipTtis)
    throw InvalidParameter("skip duration must be even and in [2, 12], got " +
                           std::to_string(ttis));
  return {Kind::SkipDuration, ttis};
}

void DlQueue::enqueue(Sdu sdu) {
  if (sdu.size_bits == 0) throw InvalidParameter("cannot enqueue an empty SDU");
  sdu.bits_remaining = sdu.size_bits;
  sdu.delivered_tti.reset();
  total_bits_ += sdu.size_bits;
  pending_.push_back(std::move(sdu));
}

Bits TransportBlock::payload_bits() const {
  Bits sum = 0;
  for (const auto& s : segments) sum += s.bits;
  return sum;
}

TransportBlock assemble_tb(const DlQueue& queue, std::size_t ue_id, Bits tbs_bits,
                           std::optional<MacCe> ce, Tti tti) {
  TransportBlock tb;
  tb.ue_id = ue_id;
  tb.tti = tti;
  tb.tbs_bits = tbs_bits;
  tb.ce = ce;

  Bits room = tbs_bits;
  for (const auto& sdu : queue.pending()) {
    if (room == 0) break;
    const Bits take = std::min(room, sdu.bits_remaining);
    tb.segments.push_back({sdu.id, take});
    room -= take;
  }
  tb.padding_bits = room;
  return tb;
}

struct QueueMutator {
  static FeedbackResult ack(DlQueue& q, const TransportBlock& tb) {
    FeedbackResult result;
    result.ce_applied = tb.ce.has_value();
    for (const auto& seg : tb.segments) {
      if (q.pending_.empty() || q.pending_.front().id != seg.sdu_id)
        throw InvariantViolation("ACKed segment of SDU " + std::to_string(seg.sdu_id) +
                                 " does not match the queue head");
      Sdu& head = q.pending_.front();
      if (seg.bits > head.bits_remaining || seg.bits == 0)
        throw InvariantViolation("ACKed segment size inconsistent with SDU " +
                                 std::to_string(seg.sdu_id));
      head.bits_remaining -= seg.bits;
      q.total_bits_ -= seg.bits;
      if (head.bits_remaining == 0) {
        head.delivered_tti = tb.tti;
        result.delivered.push_back({head.id, head.arrival_tti, tb.tti - head.arrival_tti});
        q.pending_.pop_front();
      }
    }
    return result;
  }
};

FeedbackResult process_feedback(DlQueue& queue, const TransportBlock& tb, bool delivered,
                                Tti feedback_tti) {
  if (feedback_tti <= tb.tti)
    throw InvariantViolation("HARQ feedback must arrive after the transmission TTI");
  if (!delivered) return {};
  return QueueMutator::ack(queue, tb);
}

}  // namespace drxsim
