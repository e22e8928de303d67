#include "afcsim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afcsim/errors.hpp"

namespace afcsim::propagation {
namespace {

constexpr double kThermalNoiseDbmPerHz = -174.0;

}  // namespace

bool is_valid(const FsLink& link) {
  return !link.id.empty() && geo::is_valid(link.rx_location) &&
         spectrum::is_within_band(link.freq_range) && link.bandwidth_mhz > 0.0 &&
         link.noise_figure_db >= 0.0 && std::isfinite(link.max_gain_dbi) &&
         link.azimuth_deg >= 0.0 && link.azimuth_deg < 360.0 && link.beamwidth_deg > 0.0 &&
         link.beamwidth_deg <= 360.0 && link.discrimination_db >= 0.0;
}

bool is_valid(const PropagationConfig& cfg) {
  return cfg.regime_threshold_m > 0.0 && cfg.clutter_offset_db >= 0.0;
}

bool is_valid(const ProtectionConfig& cfg) {
  return std::isfinite(cfg.i_over_n_limit_db) &&
         cfg.regulatory_max_eirp_dbm > cfg.min_useful_eirp_dbm;
}

double free_space_path_loss_db(double distance_m, double freq_mhz) {
  return 32.45 + 20.0 * std::log10(distance_m / 1000.0) + 20.0 * std::log10(freq_mhz);
}

double path_loss_db(double distance_m, double freq_mhz, const PropagationConfig& cfg) {
  if (!(distance_m >= 1.0)) throw DegenerateDistance(distance_m);
  const double fspl = free_space_path_loss_db(distance_m, freq_mhz);
  return distance_m < cfg.regime_threshold_m ? fspl : fspl + cfg.clutter_offset_db;
}

double link_center_frequency_mhz(const FsLink& link) {
  return 0.5 * (link.freq_range.low_mhz + link.freq_range.high_mhz);
}

double incumbent_noise_floor_dbm(const FsLink& link) {
  return kThermalNoiseDbmPerHz + 10.0 * std::log10(link.bandwidth_mhz * 1e6) +
         link.noise_figure_db;
}

double rx_gain_dbi(const FsLink& link, const geo::GeoPoint& ap_pos) {
  const double bearing = geo::initial_bearing_deg(link.rx_location, ap_pos);
  const double off_axis = geo::angular_difference_deg(bearing, link.azimuth_deg);
  return off_axis <= link.beamwidth_deg / 2.0 ? link.max_gain_dbi
                                              : link.max_gain_dbi - link.discrimination_db;
}

double rx_gain_dbi_worst_case(const FsLink& link, const geo::GeoPoint& ap_center,
                              double uncertainty_radius_m) {
  const double d = geo::haversine_distance(link.rx_location, ap_center);
  if (d <= uncertainty_radius_m) return link.max_gain_dbi;
  if (uncertainty_radius_m <= 0.0) return rx_gain_dbi(link, ap_center);
  const double spread_deg = std::asin(uncertainty_radius_m / d) * 180.0 / std::numbers::pi;
  const double bearing = geo::initial_bearing_deg(link.rx_location, ap_center);
  const double off_axis = geo::angular_difference_deg(bearing, link.azimuth_deg);
  return off_axis - spread_deg <= link.beamwidth_deg / 2.0
             ? link.max_gain_dbi
             : link.max_gain_dbi - link.discrimination_db;
}

double i_over_n_db(const FsLink& link, double eirp_dbm, double distance_m, double rx_gain,
                   const PropagationConfig& pcfg) {
  const double received =
      eirp_dbm - path_loss_db(distance_m, link_center_frequency_mhz(link), pcfg) + rx_gain;
  return received - incumbent_noise_floor_dbm(link);
}

std::optional<double> max_permissible_eirp_at(const FsLink& link, double distance_m,
                                              double rx_gain, const PropagationConfig& pcfg,
                                              const ProtectionConfig& prot) {
  const double allowed_interference = incumbent_noise_floor_dbm(link) + prot.i_over_n_limit_db;
  const double raw =
      allowed_interference + path_loss_db(distance_m, link_center_frequency_mhz(link), pcfg) -
      rx_gain;
  const double eirp = std::min(raw, prot.regulatory_max_eirp_dbm);
  if (eirp < prot.min_useful_eirp_dbm) return std::nullopt;
  return eirp;
}

bool is_co_channel(const FsLink& link, const spectrum::ChannelId& ch) {
  return spectrum::overlaps(spectrum::channel_span(ch), link.freq_range);
}

std::optional<double> max_permissible_eirp_dbm(const FsLink& link, const geo::GeoPoint& ap_pos,
                                               const spectrum::ChannelId& ch,
                                               const PropagationConfig& pcfg,
                                               const ProtectionConfig& prot) {
  if (!is_co_channel(link, ch)) return prot.regulatory_max_eirp_dbm;
  const double gain = rx_gain_dbi(link, ap_pos);
  const double d = std::max(1.0, geo::haversine_distance(link.rx_location, ap_pos));
  return max_permissible_eirp_at(link, d, gain, pcfg, prot);
}

}  // namespace afcsim::propagation
