#include "drxsim/replay.hpp"

namespace drxsim {

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw InvalidParameter("replay memory capacity must be >= 1");
}

void ReplayMemory::push(Transition tr) {
  if (buffer_.size() < capacity_) {
    buffer_.push_back(std::move(tr));
  } else {
    buffer_[next_] = std::move(tr);
  }
  next_ = (next_ + 1) % capacity_;
  ++pushed_;
}

std::vector<std::size_t> ReplayMemory::sample_indices(std::size_t n, Rng& rng) const {
  if (buffer_.empty()) throw InvalidParameter("cannot sample from an empty replay memory");
  std::uniform_int_distribution<std::size_t> pick(0, buffer_.size() - 1);
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = pick(rng);
  return idx;
}

const Transition& ReplayMemory::oldest(std::size_t k) const {
  if (k >= buffer_.size()) throw InvalidParameter("replay index out of range");
  if (buffer_.size() < capacity_) return buffer_[k];
  return buffer_[(next_ + k) % capacity_];
}

void ReplayMemory::clear() {
  buffer_.clear();
  next_ = 0;
  pushed_ = 0;
}

}  // namespace drxsim
