#include "vmcast/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "vmcast/util.hpp"

namespace vmcast {

double ChannelParams::noise_power_dbm() const {
  return noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz);
}

double path_loss_db(double distance_m, double carrier_ghz) {
  if (!(distance_m > 0.0)) throw std::domain_error("path_loss_db: distance must be > 0");
  return 32.4 + 20.0 * std::log10(carrier_ghz) + 31.9 * std::log10(distance_m);
}

double received_power_dbm(double distance_m, const ChannelParams& params, double shadowing_db) {
  return params.tx_power_dbm + params.antenna_gain_dbi -
         path_loss_db(distance_m, params.carrier_ghz) - shadowing_db;
}

double mean_sinr_db(double serving_distance_m, const ChannelParams& params,
                    double serving_shadowing_db, std::span<const double> interferer_distances_m,
                    std::span<const double> interferer_shadowing_db) {
  const double signal_lin =
      db_to_linear(received_power_dbm(serving_distance_m, params, serving_shadowing_db));
  double denom_lin = db_to_linear(params.noise_power_dbm());
  for (std::size_t i = 0; i < interferer_distances_m.size(); ++i) {
    double sh = i < interferer_shadowing_db.size() ? interferer_shadowing_db[i] : 0.0;
    denom_lin += db_to_linear(received_power_dbm(interferer_distances_m[i], params, sh));
  }
  return linear_to_db(signal_lin / denom_lin);
}

}  // namespace vmcast
