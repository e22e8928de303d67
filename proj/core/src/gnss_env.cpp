#include "afcsim/gnss_env.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "afcsim/errors.hpp"
#include "afcsim/propagation.hpp"

namespace afcsim::gnss {

bool is_valid(const GnssSource& s) {
  if (!geo::is_valid(s.broadcast_position) || !std::isfinite(s.received_power_dbm)) return false;
  return s.kind == SourceKind::kSpoofer || s.time_offset_s == 0;
}

bool is_valid(const GnssNoiseModel& m) {
  return m.sigma_m > 0.0 && m.ellipse_scale > 0.0 && m.capture_margin_db >= 0.0;
}

std::optional<std::size_t> capturing_source(std::span<const GnssSource> sources,
                                            double capture_margin_db) {
  std::optional<std::size_t> legit, spoofer;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    auto& best = sources[i].kind == SourceKind::kLegit ? legit : spoofer;
    if (!best || sources[i].received_power_dbm > sources[*best].received_power_dbm) best = i;
  }
  if (!legit || !spoofer) return legit ? legit : spoofer;
  const double advantage =
      sources[*spoofer].received_power_dbm - sources[*legit].received_power_dbm;
  return advantage > 0.0 && advantage >= capture_margin_db ? spoofer : legit;
}

std::optional<GnssFix> compute_fix(const geo::GeoPoint& true_pos,
                                   std::span<const GnssSource> sources, UtcSeconds true_time,
                                   const GnssNoiseModel& noise, std::uint64_t rng_seed) {
  if (!is_valid(noise)) throw ValidationError("GNSS noise model violates its invariants");
  for (const auto& s : sources) {
    if (!is_valid(s)) throw ValidationError("GNSS source violates its invariants");
  }
  const auto winner_index = capturing_source(sources, noise.capture_margin_db);
  if (!winner_index) return std::nullopt;
  const GnssSource& winner = sources[*winner_index];

  // A legitimate constellation always resolves the receiver's own position.
  const geo::GeoPoint& solved =
      winner.kind == SourceKind::kLegit ? true_pos : winner.broadcast_position;

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> axis_noise(0.0, noise.sigma_m);
  std::uniform_real_distribution<double> orientation(0.0, 180.0);
  std::uniform_real_distribution<double> axis_ratio(0.0, 1.0);

  const double north = axis_noise(rng);
  const double east = axis_noise(rng);
  const double error_m = std::hypot(north, east);
  const double error_bearing = std::atan2(east, north) * 180.0 / std::numbers::pi;

  GnssFix fix;
  fix.winning_kind = winner.kind;
  fix.ellipse.center =
      error_m > 0.0 ? geo::destination_point(solved, error_bearing, error_m) : solved;
  fix.ellipse.major_axis_m = noise.ellipse_scale * error_m;
  fix.ellipse.orientation_deg = orientation(rng);
  if (fix.ellipse.orientation_deg >= 180.0) fix.ellipse.orientation_deg = 0.0;
  fix.ellipse.minor_axis_m = fix.ellipse.major_axis_m * axis_ratio(rng);
  fix.ellipse.gps_time = true_time + winner.time_offset_s;
  return fix;
}

double received_power_dbm(double spoofer_tx_power_dbm, const geo::GeoPoint& spoofer_pos,
                          const geo::GeoPoint& victim_pos, double freq_mhz) {
  const double d = geo::haversine_distance(spoofer_pos, victim_pos);
  if (d < 1e-6) throw CoincidentPoints();
  const propagation::PropagationConfig free_space{std::numeric_limits<double>::infinity(), 0.0};
  return spoofer_tx_power_dbm - propagation::path_loss_db(d, freq_mhz, free_space);
}

}  // namespace afcsim::gnss
