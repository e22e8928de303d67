#include "afcsim/scenario.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "afcsim/errors.hpp"
#include "afcsim/wire.hpp"

namespace afcsim::scenario {
namespace {

using wire::Json;

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected an object", 0, path);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing required field", 0, path + "." + key);
  return *it;
}

const Json* find(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string string_at(const Json& j, const char* key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_string()) throw ParseError("expected a string", 0, path + "." + key);
  return v.get<std::string>();
}

double number_or(const Json& j, const char* key, const std::string& path, double fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ParseError("expected a number", 0, path + "." + key);
  return v->get<double>();
}

std::int64_t integer_at(const Json& j, const char* key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_number_integer()) throw ParseError("expected an integer", 0, path + "." + key);
  return v.get<std::int64_t>();
}

std::int64_t integer_or(const Json& j, const char* key, const std::string& path,
                        std::int64_t fallback) {
  return find(j, key) ? integer_at(j, key, path) : fallback;
}

const Json& array_at(const Json& j, const char* key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_array()) throw ParseError("expected an array", 0, path + "." + key);
  return v;
}

std::optional<Action> parse_action(std::string_view s) {
  for (auto a : {Action::kAdvanceClock, Action::kSetApClockOffset, Action::kRunInquiry,
                 Action::kRunDetectors}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

World parse_world(const Json& j) {
  const std::string path = "world";
  World w;
  if (const Json* inc = find(j, "incumbents")) w.incumbents = wire::database_from_json(*inc);
  if (const Json* pol = find(j, "policy")) w.policy = wire::policy_from_json(*pol);
  if (const Json* prop = find(j, "propagation")) {
    w.propagation = wire::propagation_config_from_json(*prop);
  }
  if (const Json* prot = find(j, "protection")) {
    w.protection = wire::protection_config_from_json(*prot);
  }
  w.group_threshold_m = number_or(j, "groupThresholdM", path, w.group_threshold_m);
  return w;
}

ApSpec parse_ap(const Json& j, const std::string& path) {
  ApSpec ap;
  ap.id = string_at(j, "id", path);
  ap.config.serial = find(j, "serial") ? string_at(j, "serial", path) : ap.id;
  ap.config.certification_id =
      find(j, "certificationId") ? string_at(j, "certificationId", path) : "CERT-" + ap.id;
  ap.config.height_m = number_or(j, "heightM", path, 0.0);
  ap.config.refresh_interval_s =
      integer_or(j, "refreshIntervalS", path, ap.config.refresh_interval_s);
  if (const Json* bws = find(j, "inquiredBandwidthsMhz")) {
    if (!bws->is_array()) throw ParseError("expected an array", 0, path + ".inquiredBandwidthsMhz");
    ap.config.inquired_bandwidths.clear();
    for (const auto& bw : *bws) {
      if (!bw.is_number_integer()) {
        throw ParseError("expected integer bandwidths", 0, path + ".inquiredBandwidthsMhz");
      }
      ap.config.inquired_bandwidths.push_back(bw.get<int>());
    }
  }
  ap.true_position =
      wire::geo_point_from_json(require(j, "truePosition", path), path + ".truePosition");
  ap.deployment_registration =
      find(j, "deploymentRegistration")
          ? wire::geo_point_from_json(*find(j, "deploymentRegistration"),
                                      path + ".deploymentRegistration")
          : ap.true_position;
  if (const Json* fence = find(j, "geofence")) {
    const std::string fpath = path + ".geofence";
    geo::Geofence f;
    f.center = find(*fence, "center")
                   ? wire::geo_point_from_json(*find(*fence, "center"), fpath + ".center")
                   : ap.deployment_registration;
    f.radius_m = number_or(*fence, "radiusM", fpath, 0.0);
    ap.geofence = f;
  }
  return ap;
}

SpooferSpec parse_spoofer(const Json& j, const std::string& path) {
  SpooferSpec s;
  s.id = string_at(j, "id", path);
  s.position = wire::geo_point_from_json(require(j, "position", path), path + ".position");
  s.broadcast_position = wire::geo_point_from_json(require(j, "broadcastPosition", path),
                                                   path + ".broadcastPosition");
  s.tx_power_dbm = number_or(j, "txPowerDbm", path, s.tx_power_dbm);

  const Json& window = array_at(j, "activeWindow", path);
  if (window.size() != 2 || !window[0].is_number_integer() || !window[1].is_number_integer()) {
    throw ParseError("expected [fromS, untilS] integers", 0, path + ".activeWindow");
  }
  s.active_from_s = window[0].get<std::int64_t>();
  s.active_until_s = window[1].get<std::int64_t>();

  // A naive replay generated from 00:00:00 runs from the start of the day
  // at which transmission begins.
  if (const Json* off = find(j, "timeOffsetS")) {
    if (off->is_string() && off->get<std::string>() == "startOfDay") {
      // Sentinel, resolved against the start time in load_scenario.
      s.time_offset_s = std::numeric_limits<std::int64_t>::min();
    } else if (off->is_number_integer()) {
      s.time_offset_s = off->get<std::int64_t>();
    } else {
      throw ParseError("expected an integer or \"startOfDay\"", 0, path + ".timeOffsetS");
    }
  }
  return s;
}

TimelineEvent parse_event(const Json& j, const std::string& path) {
  TimelineEvent e;
  e.at_s = integer_at(j, "at", path);
  const std::string action = string_at(j, "action", path);
  const auto a = parse_action(action);
  if (!a) throw ParseError("unknown action '" + action + "'", 0, path + ".action");
  e.action = *a;
  if (find(j, "ap")) e.ap_id = string_at(j, "ap", path);
  if (e.action == Action::kSetApClockOffset) e.offset_s = integer_at(j, "offsetS", path);
  return e;
}

}  // namespace

std::string_view to_string(Action a) {
  switch (a) {
    case Action::kAdvanceClock: return "ADVANCE_CLOCK";
    case Action::kSetApClockOffset: return "SET_AP_CLOCK_OFFSET";
    case Action::kRunInquiry: return "RUN_INQUIRY";
    case Action::kRunDetectors: return "RUN_DETECTORS";
  }
  return "ADVANCE_CLOCK";
}

void validate(const Scenario& s) {
  afc::validate(s.world.incumbents);
  if (!afc::is_valid(s.world.policy)) throw ValidationError("server policy violates its invariants");
  if (!propagation::is_valid(s.world.propagation)) {
    throw ValidationError("propagation config: threshold must be > 0 and offset >= 0");
  }
  if (!propagation::is_valid(s.world.protection)) {
    throw ValidationError("protection config: regulatory max must exceed min useful EIRP");
  }
  if (!(s.world.group_threshold_m > 0.0)) throw ValidationError("group threshold must be > 0");
  if (!gnss::is_valid(s.gnss_noise)) throw ValidationError("GNSS noise model violates its invariants");

  std::set<std::string> ids, serials;
  for (const auto& ap : s.aps) {
    if (ap.id.empty()) throw ValidationError("AP id must be non-empty");
    if (!ids.insert(ap.id).second) throw ValidationError("duplicate AP id '" + ap.id + "'");
    if (!serials.insert(ap.config.serial).second) {
      throw ValidationError("duplicate AP serial '" + ap.config.serial + "'");
    }
    ap::validate(ap.config);
    if (ap.geofence && !geo::is_valid(*ap.geofence)) {
      throw ValidationError("AP '" + ap.id + "': geofence radius must be > 0");
    }
  }
  for (const auto& sp : s.spoofers) {
    if (sp.active_from_s > sp.active_until_s) {
      throw ValidationError("spoofer '" + sp.id + "': active window ends before it starts");
    }
    for (const auto& ap : s.aps) {
      if (geo::haversine_distance(sp.position, ap.true_position) < 1.0) {
        throw ValidationError("spoofer '" + sp.id + "' is co-located with AP '" + ap.id + "'");
      }
    }
  }
  for (std::size_t i = 0; i < s.timeline.size(); ++i) {
    const auto& e = s.timeline[i];
    if (e.at_s < 0) throw ValidationError("timeline event " + std::to_string(i) + " is before start");
    if (i > 0 && e.at_s <= s.timeline[i - 1].at_s) {
      throw ValidationError("timeline must be strictly ordered by time (event " +
                            std::to_string(i) + ")");
    }
    if (e.ap_id && !ids.contains(*e.ap_id)) {
      throw ValidationError("timeline event " + std::to_string(i) + " references unknown AP '" +
                            *e.ap_id + "'");
    }
  }
}

Scenario load_scenario(std::string_view document) {
  const Json j = wire::parse_document(document);
  if (!j.is_object()) throw ParseError("scenario must be a JSON object", 1);

  Scenario s;
  s.name = find(j, "name") ? string_at(j, "name", "scenario") : "scenario";
  s.seed = static_cast<std::uint64_t>(integer_or(j, "seed", "scenario", 0));
  {
    const std::string text = string_at(j, "startTime", "scenario");
    try {
      s.start_time = parse_iso8601(text);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 0, "scenario.startTime");
    }
  }
  s.world = parse_world(require(j, "world", "scenario"));

  if (const Json* g = find(j, "gnss")) {
    s.legit_gnss_power_dbm = number_or(*g, "legitPowerDbm", "gnss", s.legit_gnss_power_dbm);
    s.gnss_noise.sigma_m = number_or(*g, "sigmaM", "gnss", s.gnss_noise.sigma_m);
    s.gnss_noise.ellipse_scale = number_or(*g, "ellipseScale", "gnss", s.gnss_noise.ellipse_scale);
    s.gnss_noise.capture_margin_db =
        number_or(*g, "captureMarginDb", "gnss", s.gnss_noise.capture_margin_db);
  }

  const Json& aps = array_at(j, "aps", "scenario");
  for (std::size_t i = 0; i < aps.size(); ++i) {
    s.aps.push_back(parse_ap(aps[i], "aps[" + std::to_string(i) + "]"));
  }
  if (const Json* sp = find(j, "spoofers")) {
    if (!sp->is_array()) throw ParseError("expected an array", 0, "scenario.spoofers");
    for (std::size_t i = 0; i < sp->size(); ++i) {
      auto spoofer = parse_spoofer((*sp)[i], "spoofers[" + std::to_string(i) + "]");
      if (spoofer.time_offset_s == std::numeric_limits<std::int64_t>::min()) {
        const UtcSeconds begin = s.start_time + spoofer.active_from_s;
        spoofer.time_offset_s = start_of_day(begin) - begin;
      }
      s.spoofers.push_back(std::move(spoofer));
    }
  }
  const Json& timeline = array_at(j, "timeline", "scenario");
  for (std::size_t i = 0; i < timeline.size(); ++i) {
    s.timeline.push_back(parse_event(timeline[i], "timeline[" + std::to_string(i) + "]"));
  }

  validate(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

}  // namespace afcsim::scenario
