#pragma once

#include <cstddef>
#include <deque>
#include <span>

#include "drxsim/common.hpp"

namespace drxsim {

/// Fraction of delays within `delta` TTIs; 1.0 when nothing was delivered.
double satisfaction(std::span<const Tti> window, Tti delta);

/// sigma - beta when the latency target is missed, otherwise the sleep
/// indicator 1 - W.
double reward(double sigma, double beta, bool listening);

/// Online satisfaction over the most recent `capacity` delivered SDUs.
class SatisfactionWindow {
 public:
  SatisfactionWindow(std::size_t capacity, Tti delta);

  void push(Tti delay);
  double value() const;
  std::size_t size() const { return delays_.size(); }
  const std::deque<Tti>& delays() const { return delays_; }

 private:
  std::size_t capacity_;
  Tti delta_;
  std::deque<Tti> delays_;
  std::size_t within_ = 0;
};

}  // namespace drxsim
