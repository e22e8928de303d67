#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afcsim/afc_server.hpp"
#include "afcsim/ap_client.hpp"
#include "afcsim/defense.hpp"
#include "afcsim/gnss_env.hpp"

namespace afcsim::scenario {

struct World {
  afc::IncumbentDatabase incumbents;
  afc::ServerPolicy policy;  // coverage lives here
  propagation::PropagationConfig propagation;
  propagation::ProtectionConfig protection;
  double group_threshold_m = defense::kDefaultGroupThresholdM;
};

struct ApSpec {
  std::string id;
  ap::ApConfig config;
  geo::GeoPoint true_position;
  geo::GeoPoint deployment_registration;
  std::optional<geo::Geofence> geofence;
};

struct SpooferSpec {
  std::string id;
  geo::GeoPoint position;
  geo::GeoPoint broadcast_position;
  double tx_power_dbm = 10.0;
  std::int64_t time_offset_s = 0;
  // Seconds relative to the scenario start, inclusive on both ends.
  std::int64_t active_from_s = 0;
  std::int64_t active_until_s = 0;

  bool active_at(std::int64_t at_s) const { return at_s >= active_from_s && at_s <= active_until_s; }
};

enum class Action { kAdvanceClock, kSetApClockOffset, kRunInquiry, kRunDetectors };

std::string_view to_string(Action a);

struct TimelineEvent {
  std::int64_t at_s = 0;  // relative to start_time
  Action action = Action::kAdvanceClock;
  std::optional<std::string> ap_id;  // nullopt targets every AP
  std::int64_t offset_s = 0;         // kSetApClockOffset only
};

struct Scenario {
  std::string name;
  UtcSeconds start_time = 0;
  World world;
  std::vector<ApSpec> aps;
  double legit_gnss_power_dbm = -110.0;
  gnss::GnssNoiseModel gnss_noise;
  std::vector<SpooferSpec> spoofers;
  std::vector<TimelineEvent> timeline;
  std::uint64_t seed = 0;
};

// Throws ValidationError naming the broken invariant.
void validate(const Scenario& s);

// Parses and validates a scenario document. Throws ParseError (with line or
// field) for malformed input and ValidationError for broken invariants.
Scenario load_scenario(std::string_view document);

Scenario load_scenario_file(const std::string& path);

}  // namespace afcsim::scenario
