#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "drxsim/common.hpp"

namespace drxsim {

struct UeView {
  bool active = false;
  Bits queue_bits = 0;
  bool pending_ce = false;

  bool eligible() const { return active && (queue_bits > 0 || pending_ce); }
};

/// Round-robin over UE indices: at most one grant per TTI, handed to the
/// first eligible UE at or after the rotation pointer.
class RoundRobinScheduler {
 public:
  explicit RoundRobinScheduler(std::size_t num_ues);

  std::optional<std::size_t> schedule(std::span<const UeView> ues);

  std::size_t next_index() const { return next_index_; }
  std::size_t num_ues() const { return num_ues_; }

 private:
  std::size_t num_ues_;
  std::size_t next_index_ = 0;
};

}  // namespace drxsim
