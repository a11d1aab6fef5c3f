#include "drxsim/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace drxsim {

namespace {
// Ceil with a small slack so that n * 16.6 landing a few ulps above an
// integer (5 * 16.6 = 83.00000000000001) still maps to that integer.
constexpr double kCeilSlack = 1e-9;
constexpr int kMaxRejections = 1'000'000;
}  // namespace

void XrTrafficParams::validate() const {
  if (!(frame_interval_ms > 0.0)) throw InvalidParameter("frame_interval_ms must be > 0");
  if (mean_packet_bits == 0) throw InvalidParameter("mean_packet_bits must be > 0");
  if (!(size_min_frac < 1.0 && 1.0 < size_max_frac))
    throw InvalidParameter("packet size bounds must bracket the mean");
  if (size_min_frac < 0.0) throw InvalidParameter("size_min_frac must be >= 0");
  if (!(jitter_min_ms < jitter_max_ms) && !(jitter_min_ms == jitter_max_ms && jitter_std_ms == 0.0))
    throw InvalidParameter("jitter_min_ms must be < jitter_max_ms");
  if (size_std_frac < 0.0 || jitter_std_ms < 0.0)
    throw InvalidParameter("standard deviations must be >= 0");
}

double sample_truncated_gaussian(double mean, double std, double lo, double hi, Rng& rng) {
  if (lo > hi) throw InvalidParameter("truncated gaussian: lo > hi");
  if (std < 0.0) throw InvalidParameter("truncated gaussian: negative std");
  if (std == 0.0 || lo == hi) return std::clamp(mean, lo, hi);

  std::normal_distribution<double> normal(mean, std);
  for (int i = 0; i < kMaxRejections; ++i) {
    const double x = normal(rng);
    if (x >= lo && x <= hi) return x;
  }
  throw InvalidParameter("truncated gaussian: interval carries negligible probability mass");
}

std::vector<SduArrival> generate_arrivals(const XrTrafficParams& params, Tti horizon_ttis,
                                          Rng& rng) {
  params.validate();
  const double mean = static_cast<double>(params.mean_packet_bits);
  const double size_lo = params.size_min_frac * mean;
  const double size_hi = params.size_max_frac * mean;
  const double size_std = params.size_std_frac * mean;

  std::vector<SduArrival> out;
  out.reserve(static_cast<std::size_t>(horizon_ttis / params.frame_interval_ms) + 2);

  for (std::uint64_t n = 1;; ++n) {
    const double nominal = static_cast<double>(n) * params.frame_interval_ms;
    if (nominal + params.jitter_min_ms >= static_cast<double>(horizon_ttis)) break;

    const double jitter = sample_truncated_gaussian(0.0, params.jitter_std_ms,
                                                    params.jitter_min_ms, params.jitter_max_ms, rng);
    const double size = sample_truncated_gaussian(mean, size_std, size_lo, size_hi, rng);

    const double when = std::max(0.0, nominal + jitter);
    const auto tti = static_cast<Tti>(std::ceil(when - kCeilSlack));
    if (tti >= horizon_ttis) continue;

    auto bits = static_cast<Bits>(std::llround(size));
    bits = std::clamp(bits, static_cast<Bits>(std::ceil(size_lo)),
                      static_cast<Bits>(std::floor(size_hi)));
    out.push_back({tti, bits});
  }
  return out;
}

}  // namespace drxsim
