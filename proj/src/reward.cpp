#include "drxsim/reward.hpp"

#include <algorithm>

namespace drxsim {

double satisfaction(std::span<const Tti> window, Tti delta) {
  if (window.empty()) return 1.0;
  const auto ok = std::count_if(window.begin(), window.end(), [&](Tti d) { return d <= delta; });
  return static_cast<double>(ok) / static_cast<double>(window.size());
}

double reward(double sigma, double beta, bool listening) {
  if (sigma < beta) return sigma - beta;
  return listening ? 0.0 : 1.0;
}

SatisfactionWindow::SatisfactionWindow(std::size_t capacity, Tti delta)
    : capacity_(capacity), delta_(delta) {
  if (capacity == 0) throw InvalidParameter("satisfaction window must hold >= 1 SDU");
}

void SatisfactionWindow::push(Tti delay) {
  delays_.push_back(delay);
  if (delay <= delta_) ++within_;
  if (delays_.size() > capacity_) {
    if (delays_.front() <= delta_) --within_;
    delays_.pop_front();
  }
}

double SatisfactionWindow::value() const {
  if (delays_.empty()) return 1.0;
  return static_cast<double>(within_) / static_cast<double>(delays_.size());
}

}  // namespace drxsim
