#pragma once

#include <span>
#include <vector>

namespace vmcast {

/// Propagation and radio parameters. Defaults follow the standard picocell
/// highway setup: 5.9 GHz carrier, 23 dBm TX, 1 dBi gain, 8.2 dB lognormal
/// shadowing, Rician K = 1 on LOS links, -174 dBm/Hz noise density over one
/// RB of bandwidth (12 x 15 kHz).
struct ChannelParams {
  double carrier_ghz = 5.9;
  double tx_power_dbm = 23.0;
  double antenna_gain_dbi = 1.0;
  double shadowing_sigma_db = 8.2;
  bool shadowing_enabled = true;
  double rician_k = 1.0;
  double noise_density_dbm_hz = -174.0;
  double bandwidth_hz = 180e3;
  int interferer_count = 0;

  double noise_power_dbm() const;
};

/// UMi street-canyon path loss: 32.4 + 20 log10(f_c/GHz) + 31.9 log10(d/m).
/// Throws std::domain_error for non-positive distance.
double path_loss_db(double distance_m, double carrier_ghz);

/// One received-power term of the link budget, in dBm.
double received_power_dbm(double distance_m, const ChannelParams& params,
                          double shadowing_db = 0.0);

/// Mean SINR of a link in dB: desired received power over noise plus the sum
/// of interferer received powers, composed in linear units. Distances are
/// precomputed by the caller; shadowing values are the frozen per-link draws.
double mean_sinr_db(double serving_distance_m, const ChannelParams& params,
                    double serving_shadowing_db = 0.0,
                    std::span<const double> interferer_distances_m = {},
                    std::span<const double> interferer_shadowing_db = {});

}  // namespace vmcast
