#include "drxsim/phy.hpp"

#include <cmath>
#include <numbers>

namespace drxsim {

void PhyParams::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw InvalidParameter("rho must lie in (0, 1)");
  if (!(snr_linear > 0.0)) throw InvalidParameter("snr must be > 0");
  if (!(bw_eff_hz > 0.0)) throw InvalidParameter("effective bandwidth must be > 0");
  if (!(tti_s > 0.0)) throw InvalidParameter("tti duration must be > 0");
  if (csi_period_ttis == 0) throw InvalidParameter("csi period must be >= 1");
}

double rho_from_doppler(double carrier_hz, double velocity_mps, double tti_s) {
  const double doppler_hz = std::abs(carrier_hz * velocity_mps) / kSpeedOfLight;
  const double x = 2.0 * std::numbers::pi * doppler_hz * std::abs(tti_s);
  return std::cyl_bessel_j(0.0, x);
}

Complex sample_cn(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

ChannelState initial_channel(Rng& rng) {
  ChannelState s;
  s.h = sample_cn(rng);
  s.h_reported = s.h;
  s.last_report_tti = 0;
  return s;
}

ChannelState step_channel(const ChannelState& state, double rho, Rng& rng) {
  ChannelState next = state;
  const Complex w = sample_cn(rng);
  next.h = rho * state.h + std::sqrt(1.0 - rho * rho) * w;
  return next;
}

bool csi_report_due(Tti t, Tti period, bool ue_active) {
  if (period == 0) throw InvalidParameter("csi period must be >= 1");
  return ue_active && t % period == 0;
}

bool update_csi(ChannelState& state, Tti t, Tti period, bool ue_active) {
  if (!csi_report_due(t, period, ue_active)) return false;
  state.h_reported = state.h;
  state.last_report_tti = t;
  return true;
}

double tti_capacity_bits(Complex h, const PhyParams& p) {
  return p.bw_eff_hz * p.tti_s * std::log2(1.0 + p.snr_linear * std::norm(h));
}

Bits select_tbs(Complex h_reported, const PhyParams& p) {
  return static_cast<Bits>(std::floor(tti_capacity_bits(h_reported, p)));
}

bool tb_outcome(Complex h_actual, Bits tbs_bits, const PhyParams& p) {
  if (tbs_bits == 0) return true;
  return tti_capacity_bits(h_actual, p) >= static_cast<double>(tbs_bits);
}

}  // namespace drxsim
