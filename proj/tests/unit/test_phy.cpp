#include <cmath>
#include <numbers>

#include "doctest.h"
#include "drxsim/phy.hpp"

using namespace drxsim;

TEST_SUITE("phy") {

TEST_CASE("rho from Doppler") {
  CHECK(rho_from_doppler(3.5e9, 0.0, 1e-3) == 1.0);
  // Pick v so that 2 pi f_D T = 0.2; J0(0.2) = 0.99002497 (scipy.special.j0).
  const double fc = 3.5e9;
  const double v = 0.2 / (2 * std::numbers::pi * 1e-3) * kSpeedOfLight / fc;
  CHECK(std::abs(rho_from_doppler(fc, v, 1e-3) - 0.990025) < 1e-6);
  CHECK(rho_from_doppler(fc, -v, 1e-3) == rho_from_doppler(fc, v, 1e-3));
}

TEST_CASE("rho = 1 freezes the channel") {
  Rng rng = make_rng(1, 2);
  ChannelState s = initial_channel(rng);
  const Complex h0 = s.h;
  for (int i = 0; i < 100; ++i) s = step_channel(s, 1.0, rng);
  CHECK(s.h == h0);
}

namespace {
struct Stats {
  double power = 0;
  double lag1 = 0;
};
Stats run_chain(double rho, int n, std::uint64_t seed) {
  Rng rng = make_rng(seed, 2);
  ChannelState s = initial_channel(rng);
  double p = 0, num = 0, den = 0, mean = 0;
  std::vector<double> re(n);
  for (int i = 0; i < n; ++i) {
    s = step_channel(s, rho, rng);
    re[i] = s.h.real();
    p += std::norm(s.h);
    mean += re[i];
  }
  mean /= n;
  for (int i = 0; i < n; ++i) {
    den += (re[i] - mean) * (re[i] - mean);
    if (i > 0) num += (re[i] - mean) * (re[i - 1] - mean);
  }
  return {p / n, num / den};
}
}  // namespace

TEST_CASE("AR(1) statistics at rho = 0.99") {
  const Stats st = run_chain(0.99, 1'000'000, 11);
  CHECK(st.lag1 >= 0.98);
  CHECK(st.lag1 <= 1.00);
  CHECK(std::abs(st.power - 1.0) < 0.02);
}

TEST_CASE("white channel at rho = 0") {
  const Stats st = run_chain(0.0, 1'000'000, 12);
  CHECK(std::abs(st.lag1) < 0.01);
  CHECK(std::abs(st.power - 1.0) < 0.02);
}

TEST_CASE("stationarity for several rho") {
  for (double rho : {0.1, 0.5, 0.9}) {
    CAPTURE(rho);
    CHECK(std::abs(run_chain(rho, 1'000'000, 13).power - 1.0) < 0.02);
  }
}

TEST_CASE("CSI reports") {
  CHECK(csi_report_due(20, 10, true));
  CHECK_FALSE(csi_report_due(20, 10, false));
  CHECK_FALSE(csi_report_due(21, 10, true));

  ChannelState s{{0.5, 0.5}, {1.0, 0.0}, 10};
  CHECK_FALSE(update_csi(s, 20, 10, false));
  CHECK(s.h_reported == Complex{1.0, 0.0});
  CHECK(s.last_report_tti == 10);
  CHECK(update_csi(s, 20, 10, true));
  CHECK(s.h_reported == s.h);
  CHECK(s.last_report_tti == 20);
}

TEST_CASE("genie report at t = 0") {
  Rng rng = make_rng(3, 2);
  const ChannelState s = initial_channel(rng);
  CHECK(s.h_reported == s.h);
  CHECK(s.last_report_tti == 0);
}

TEST_CASE("TB size from the reported channel") {
  const PhyParams p;
  CHECK(select_tbs({0, 0}, p) == 0);
  CHECK(select_tbs({1, 0}, p) == 249079);  // floor(72000 log2 11)
  Bits prev = 0;
  for (double g = 0.0; g < 4.0; g += 0.01) {
    const Bits b = select_tbs({std::sqrt(g), 0}, p);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("outage rule") {
  const PhyParams p;
  Rng rng = make_rng(4, 2);
  for (int i = 0; i < 1000; ++i) {
    const Complex h = sample_cn(rng);
    CHECK(tb_outcome(h, select_tbs(h, p), p));  // fresh CSI always decodes
  }
  CHECK_FALSE(tb_outcome({0, 0}, 1, p));
  CHECK(tb_outcome({0, 0}, 0, p));
  CHECK(tb_outcome({1, 0}, 249079, p));
  CHECK_FALSE(tb_outcome({1, 0}, 249080, p));
}

TEST_CASE("parameter validation") {
  PhyParams p;
  p.rho = 1.5;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = {};
  p.snr_linear = 0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = {};
  p.csi_period_ttis = 0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
}

}  // TEST_SUITE
