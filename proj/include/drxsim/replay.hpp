#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "drxsim/common.hpp"
#include "drxsim/features.hpp"

namespace drxsim {

struct Transition {
  EncodedState s{};
  std::uint8_t a = 0;
  double r = 0.0;
  EncodedState s_next{};
  bool terminal = false;

  // Provenance of the decision, kept for auditing the memory contents.
  std::size_t ue_id = 0;
  Tti decision_tti = 0;
  bool decided_while_active = true;
};

/// Fixed-capacity FIFO of transitions with uniform sampling.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity);

  void push(Transition tr);
  /// n indices into the memory, uniform with replacement.
  std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const;

  /// Element by storage slot (as returned by sample_indices).
  const Transition& slot(std::size_t i) const { return buffer_[i]; }
  /// Element by age: 0 is the oldest entry still held.
  const Transition& oldest(std::size_t k) const;

  std::size_t size() const { return buffer_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t total_pushed() const { return pushed_; }
  void clear();

 private:
  std::size_t capacity_;
  std::vector<Transition> buffer_;
  std::size_t next_ = 0;
  std::uint64_t pushed_ = 0;
};

}  // namespace drxsim
