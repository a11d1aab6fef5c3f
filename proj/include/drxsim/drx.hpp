#pragma once

#include "drxsim/common.hpp"
#include "drxsim/mac.hpp"

namespace drxsim {

struct DrxConfig {
  Tti long_cycle_ttis = 16;
  Tti on_duration_ttis = 8;
  Tti inactivity_timer_ttis = 8;
  Tti cycle_offset_ttis = 0;

  void validate() const;
};

enum class DrxMode { OnDuration, InactivityExtended, Sleep, Skip };

/// Long-DRX state of one UE. The same struct is kept at the UE and, as a
/// mirror, at the BTS; both are advanced by the same functions.
///
/// A state value describes the TTI it is attached to: `listening()` is
/// W_u(t) for the TTI the state was produced for.
struct DrxState {
  DrxMode mode = DrxMode::Sleep;
  Tti on_remaining = 0;
  Tti inactivity_remaining = 0;
  Tti skip_remaining = 0;

  bool listening() const {
    return mode == DrxMode::OnDuration || mode == DrxMode::InactivityExtended;
  }
  bool operator==(const DrxState&) const = default;
};

bool is_cycle_start(Tti t, const DrxConfig& cfg);

/// State governing TTI `t` when the UE is switched on at `t`.
DrxState initial_drx_state(const DrxConfig& cfg, Tti t = 0);

/// Advances the state past TTI `t`; the result governs TTI t + 1.
///
/// A grant decoded at `t` (data_notified) restarts the inactivity timer.
/// Otherwise running timers count down and the UE sleeps once all have
/// expired. A cycle start at t + 1 restarts the on-duration timer and wakes
/// a sleeping UE. PDCCH skipping ignores everything until it runs out, then
/// resumes listening with a fresh inactivity timer.
DrxState drx_tick(const DrxState& state, const DrxConfig& cfg, Tti t, bool data_notified);

/// Applies a CE decoded in the TB of TTI `t` to the state that governs
/// t + 1 (i.e. the output of drx_tick for `t`).
DrxState apply_ce(const DrxState& state, const DrxConfig& cfg, const MacCe& ce, Tti t);

/// Smallest k >= 1 such that t + k is a cycle start.
Tti time_until_next_cycle(Tti t, const DrxConfig& cfg);

/// TTIs until the timer logic alone would change the listening state.
Tti remaining_in_state(const DrxState& state, const DrxConfig& cfg, Tti t);

}  // namespace drxsim
