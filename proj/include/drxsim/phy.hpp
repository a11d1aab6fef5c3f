#pragma once

#include <complex>

#include "drxsim/common.hpp"

namespace drxsim {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 2.998e8;

struct PhyParams {
  double rho = 0.99;
  double snr_linear = 10.0;
  double bw_eff_hz = 72e6;
  double tti_s = 1e-3;
  Tti csi_period_ttis = 10;

  void validate() const;
};

/// Per-UE fading state. `h` is the true coefficient at the current TTI;
/// `h_reported` is what the BTS last heard over CSI.
struct ChannelState {
  Complex h{0.0, 0.0};
  Complex h_reported{0.0, 0.0};
  Tti last_report_tti = 0;
};

/// One-TTI fading correlation J0(2 pi f_D T) with f_D = f_c v / c.
double rho_from_doppler(double carrier_hz, double velocity_mps, double tti_s);

/// Circularly-symmetric complex Gaussian with unit variance.
Complex sample_cn(Rng& rng);

/// h ~ CN(0,1), with a genie report at t = 0.
ChannelState initial_channel(Rng& rng);

/// AR(1) update h <- rho h + sqrt(1 - rho^2) w.
ChannelState step_channel(const ChannelState& state, double rho, Rng& rng);

bool csi_report_due(Tti t, Tti period, bool ue_active);

/// Collects the CSI report at `t` if one is due and the UE listens; returns
/// whether the BTS view changed.
bool update_csi(ChannelState& state, Tti t, Tti period, bool ue_active);

/// Shannon capacity of one TTI in bits, bw * T * log2(1 + snr |h|^2).
double tti_capacity_bits(Complex h, const PhyParams& p);

/// Transport block size chosen from the reported channel.
Bits select_tbs(Complex h_reported, const PhyParams& p);

/// Outage rule: the TB decodes iff the instantaneous capacity supports it.
bool tb_outcome(Complex h_actual, Bits tbs_bits, const PhyParams& p);

}  // namespace drxsim
