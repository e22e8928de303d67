#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "afcsim/geo.hpp"
#include "afcsim/time_util.hpp"

namespace afcsim::gnss {

inline constexpr double kGpsL1Mhz = 1575.42;

enum class SourceKind { kLegit, kSpoofer };

struct GnssSource {
  SourceKind kind = SourceKind::kLegit;
  // The position a captured receiver computes. For kLegit this is the
  // receiver's true position.
  geo::GeoPoint broadcast_position;
  double received_power_dbm = -110.0;
  // Added to true time in the computed fix; always 0 for kLegit.
  std::int64_t time_offset_s = 0;
};

struct GnssNoiseModel {
  double sigma_m = 5.0;
  double ellipse_scale = 2.0;
  double capture_margin_db = 3.0;
};

struct GnssFix {
  geo::LocationEllipse ellipse;
  // Simulation ground truth. Nothing on the AP decision path reads it.
  SourceKind winning_kind = SourceKind::kLegit;
};

bool is_valid(const GnssSource& s);
bool is_valid(const GnssNoiseModel& m);

// Index of the source that captures the receiver, nullopt when there are no
// sources. A spoofer must beat the strongest legitimate source by at least
// capture_margin_db; ties go to the legitimate signal.
std::optional<std::size_t> capturing_source(std::span<const GnssSource> sources,
                                            double capture_margin_db);

// nullopt models NoFix (no signal, jamming, cold start). Deterministic for a
// given seed. Throws ValidationError for an invalid source or noise model.
std::optional<GnssFix> compute_fix(const geo::GeoPoint& true_pos,
                                   std::span<const GnssSource> sources, UtcSeconds true_time,
                                   const GnssNoiseModel& noise, std::uint64_t rng_seed);

// Free-space link budget from an attacker transmitter to the victim antenna.
// Throws CoincidentPoints when the positions coincide.
double received_power_dbm(double spoofer_tx_power_dbm, const geo::GeoPoint& spoofer_pos,
                          const geo::GeoPoint& victim_pos, double freq_mhz = kGpsL1Mhz);

}  // namespace afcsim::gnss
