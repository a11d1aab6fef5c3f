#include "drxsim/drx.hpp"

#include <algorithm>

namespace drxsim {

void DrxConfig::validate() const {
  if (long_cycle_ttis == 0 || on_duration_ttis == 0 || inactivity_timer_ttis == 0)
    throw InvalidParameter("DRX timers must be >= 1");
  if (on_duration_ttis > long_cycle_ttis)
    throw InvalidParameter("onDuration must not exceed the long cycle");
}

bool is_cycle_start(Tti t, const DrxConfig& cfg) {
  return t % cfg.long_cycle_ttis == cfg.cycle_offset_ttis % cfg.long_cycle_ttis;
}

DrxState initial_drx_state(const DrxConfig& cfg, Tti t) {
  DrxState s;
  if (is_cycle_start(t, cfg)) {
    s.mode = DrxMode::OnDuration;
    s.on_remaining = cfg.on_duration_ttis;
  }
  return s;
}

DrxState drx_tick(const DrxState& state, const DrxConfig& cfg, Tti t, bool data_notified) {
  DrxState next = state;

  if (state.mode == DrxMode::Skip) {
    if (next.skip_remaining > 0) --next.skip_remaining;
    if (next.skip_remaining == 0) {
      next.mode = DrxMode::InactivityExtended;
      next.inactivity_remaining = cfg.inactivity_timer_ttis;
      next.on_remaining = 0;
    }
    return next;
  }

  if (state.listening()) {
    if (next.on_remaining > 0) --next.on_remaining;
    if (data_notified) {
      next.inactivity_remaining = cfg.inactivity_timer_ttis;
    } else if (next.inactivity_remaining > 0) {
      --next.inactivity_remaining;
    }
    if (next.inactivity_remaining > 0)
      next.mode = DrxMode::InactivityExtended;
    else if (next.on_remaining > 0)
      next.mode = DrxMode::OnDuration;
    else
      next.mode = DrxMode::Sleep;
  }

  if (is_cycle_start(t + 1, cfg)) {
    next.on_remaining = cfg.on_duration_ttis;
    if (next.mode == DrxMode::Sleep) next.mode = DrxMode::OnDuration;
  }
  return next;
}

DrxState apply_ce(const DrxState& state, const DrxConfig& cfg, const MacCe& ce, Tti t) {
  DrxState next = state;
  next.on_remaining = 0;
  next.inactivity_remaining = 0;
  next.skip_remaining = 0;
  switch (ce.kind) {
    case MacCe::Kind::LongDrxCommand:
      next.mode = DrxMode::Sleep;
      if (is_cycle_start(t + 1, cfg)) {
        next.mode = DrxMode::OnDuration;
        next.on_remaining = cfg.on_duration_ttis;
      }
      break;
    case MacCe::Kind::SkipDuration:
      if (ce.skip_ttis == 0 || ce.skip_ttis > kMaxSkipTtis)
        throw InvalidParameter("skip duration out of range");
      next.mode = DrxMode::Skip;
      next.skip_remaining = ce.skip_ttis;
      break;
  }
  return next;
}

Tti time_until_next_cycle(Tti t, const DrxConfig& cfg) {
  const Tti cycle = cfg.long_cycle_ttis;
  const Tti phase = (t + cycle - cfg.cycle_offset_ttis % cycle) % cycle;
  return cycle - phase;
}

Tti remaining_in_state(const DrxState& state, const DrxConfig& cfg, Tti t) {
  switch (state.mode) {
    case DrxMode::OnDuration:
    case DrxMode::InactivityExtended:
      return std::max(state.on_remaining, state.inactivity_remaining);
    case DrxMode::Sleep:
      return time_until_next_cycle(t, cfg);
    case DrxMode::Skip:
      return state.skip_remaining;
  }
  return 0;
}

}  // namespace drxsim
