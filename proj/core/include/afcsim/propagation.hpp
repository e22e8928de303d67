#pragma once

#include <optional>
#include <string>

#include "afcsim/geo.hpp"
#include "afcsim/spectrum_plan.hpp"

namespace afcsim::propagation {

// Licensed fixed-service receiver protected by the coordination service.
struct FsLink {
  std::string id;
  geo::GeoPoint rx_location;
  spectrum::FrequencyRange freq_range;
  double bandwidth_mhz = 20.0;
  double noise_figure_db = 5.0;
  double max_gain_dbi = 30.0;
  double azimuth_deg = 0.0;       // boresight bearing
  double beamwidth_deg = 6.0;
  double discrimination_db = 25.0;  // gain reduction outside the main beam
};

// Two-regime path loss: free space below the threshold, free space plus a
// fixed clutter offset at and beyond it.
struct PropagationConfig {
  double regime_threshold_m = 1000.0;
  double clutter_offset_db = 20.0;
};

struct ProtectionConfig {
  double i_over_n_limit_db = -6.0;
  double regulatory_max_eirp_dbm = 36.0;
  double min_useful_eirp_dbm = 21.0;
};

bool is_valid(const FsLink& link);
bool is_valid(const PropagationConfig& cfg);
bool is_valid(const ProtectionConfig& cfg);

double free_space_path_loss_db(double distance_m, double freq_mhz);

// Throws DegenerateDistance for distance_m < 1.
double path_loss_db(double distance_m, double freq_mhz, const PropagationConfig& cfg);

// Frequency at which interference into the link is evaluated.
double link_center_frequency_mhz(const FsLink& link);

// kTB + NF over the receiver bandwidth.
double incumbent_noise_floor_dbm(const FsLink& link);

// Two-level antenna pattern: max gain within half the beamwidth of
// boresight (inclusive), max gain minus discrimination elsewhere.
// Throws CoincidentPoints.
double rx_gain_dbi(const FsLink& link, const geo::GeoPoint& ap_pos);

// Highest gain the receiver could present to any transmitter within
// uncertainty_radius_m of ap_center.
double rx_gain_dbi_worst_case(const FsLink& link, const geo::GeoPoint& ap_center,
                              double uncertainty_radius_m);

// Interference-to-noise ratio at the link for a transmitter at the given
// distance and receive gain.
double i_over_n_db(const FsLink& link, double eirp_dbm, double distance_m, double rx_gain,
                   const PropagationConfig& pcfg);

// Highest EIRP that keeps I/N at the limit for the given geometry, capped at
// the regulatory maximum. nullopt when the result falls below the minimum
// useful EIRP (channel unavailable).
std::optional<double> max_permissible_eirp_at(const FsLink& link, double distance_m,
                                              double rx_gain, const PropagationConfig& pcfg,
                                              const ProtectionConfig& prot);

// Same, with distance and gain derived from the AP position. A channel that
// does not overlap the link's frequency range is unconstrained by it and
// gets the regulatory maximum.
std::optional<double> max_permissible_eirp_dbm(const FsLink& link, const geo::GeoPoint& ap_pos,
                                               const spectrum::ChannelId& ch,
                                               const PropagationConfig& pcfg,
                                               const ProtectionConfig& prot);

bool is_co_channel(const FsLink& link, const spectrum::ChannelId& ch);

}  // namespace afcsim::propagation
