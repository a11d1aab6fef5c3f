#include "drxsim/scheduler.hpp"

namespace drxsim {

RoundRobinScheduler::RoundRobinScheduler(std::size_t num_ues) : num_ues_(num_ues) {
  if (num_ues == 0) throw InvalidParameter("scheduler needs at least one UE");
}

std::optional<std::size_t> RoundRobinScheduler::schedule(std::span<const UeView> ues) {
  if (ues.size() != num_ues_) throw InvalidParameter("UE view count mismatch");
  for (std::size_t k = 0; k < num_ues_; ++k) {
    const std::size_t u = (next_index_ + k) % num_ues_;
    if (ues[u].eligible()) {
      next_index_ = (u + 1) % num_ues_;
      return u;
    }
  }
  return std::nullopt;
}

}  // namespace drxsim
