#pragma once

#include <vector>

#include "drxsim/common.hpp"

namespace drxsim {

/// Quasi-periodic XR downlink source: one video frame per interval, with
/// truncated-Gaussian frame size and arrival jitter.
struct XrTrafficParams {
  double frame_interval_ms = 16.6;
  Bits mean_packet_bits = 1'000'000;
  double size_std_frac = 0.105;
  double size_min_frac = 0.5;
  double size_max_frac = 1.5;
  double jitter_std_ms = 2.0;
  double jitter_min_ms = -4.0;
  double jitter_max_ms = 4.0;

  void validate() const;
};

struct SduArrival {
  Tti arrival_tti = 0;
  Bits size_bits = 0;

  bool operator==(const SduArrival&) const = default;
};

/// Gaussian(mean, std) conditioned on [lo, hi], drawn by rejection.
double sample_truncated_gaussian(double mean, double std, double lo, double hi, Rng& rng);

/// Frame n (n = 1, 2, ...) exists at n * interval + jitter_n milliseconds and
/// becomes an SDU at the ceiling of that time. Frames landing at or beyond
/// `horizon_ttis` are dropped.
std::vector<SduArrival> generate_arrivals(const XrTrafficParams& params, Tti horizon_ttis,
                                          Rng& rng);

}  // namespace drxsim
