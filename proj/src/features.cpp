#include "drxsim/features.hpp"

#include <algorithm>

namespace drxsim {

namespace {
double unit(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace

StateFeatures build_features(const UeObservation& ue, const CellObservation& cell,
                             const DrxConfig& cfg, Tti t) {
  StateFeatures f;
  f.ack = ue.last_ack;
  f.scheduled = ue.last_scheduled;
  f.ttnc = time_until_next_cycle(t, cfg);
  if (ue.queue != nullptr && !ue.queue->empty()) {
    f.age = t - ue.queue->head().arrival_tti;
    f.queue_bits = ue.queue->total_bits();
  }
  f.remaining_state = remaining_in_state(ue.drx, cfg, t);
  f.resource_usage = ue.last_usage;
  f.n_active_ues = cell.n_active_ues;
  f.total_queue_bits = cell.total_queue_bits;
  return f;
}

EncodedFrame encode_frame(const StateFeatures& f, const Normalization& norm) {
  EncodedFrame x{};
  x[0] = f.ack ? 1.0 : 0.0;
  x[1] = f.scheduled ? 1.0 : 0.0;
  x[2] = unit(static_cast<double>(f.ttnc) / norm.ttnc_scale);
  x[3] = unit(static_cast<double>(f.age) / norm.age_scale);
  x[4] = unit(static_cast<double>(f.queue_bits) / norm.queue_sat_bits);
  x[5] = unit(static_cast<double>(f.remaining_state) / norm.remaining_scale);
  x[6 + static_cast<std::size_t>(f.resource_usage)] = 1.0;
  x[10] = unit(static_cast<double>(f.n_active_ues) / norm.max_ues);
  x[11] = unit(static_cast<double>(f.total_queue_bits) / (norm.max_ues * norm.queue_sat_bits));
  return x;
}

EncodedState encode(const std::array<StateFeatures, kHistoryFrames>& frames,
                    const Normalization& norm) {
  EncodedState s{};
  for (std::size_t i = 0; i < kHistoryFrames; ++i) {
    const EncodedFrame x = encode_frame(frames[i], norm);
    std::copy(x.begin(), x.end(), s.begin() + static_cast<std::ptrdiff_t>(i * kFrameSize));
  }
  return s;
}

void FeatureHistory::push(const EncodedFrame& frame) {
  std::rotate(frames_.begin(), frames_.begin() + 1, frames_.end());
  frames_.back() = frame;
  filled_ = std::min(filled_ + 1, kHistoryFrames);
}

EncodedState FeatureHistory::state() const {
  EncodedState s{};
  for (std::size_t i = 0; i < kHistoryFrames; ++i)
    std::copy(frames_[i].begin(), frames_[i].end(),
              s.begin() + static_cast<std::ptrdiff_t>(i * kFrameSize));
  return s;
}

}  // namespace drxsim
