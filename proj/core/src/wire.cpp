#include "afcsim/wire.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "afcsim/errors.hpp"

namespace afcsim::wire {
namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected an object", 0, path);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing required field", 0, path + "." + key);
  return *it;
}

const Json* optional_member(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

double get_number(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_number()) throw ParseError("expected a number", 0, path + "." + key);
  return v.get<double>();
}

double get_number_or(const Json& j, const char* key, const std::string& path, double fallback) {
  return optional_member(j, key) ? get_number(j, key, path) : fallback;
}

std::int64_t get_integer(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_number_integer()) throw ParseError("expected an integer", 0, path + "." + key);
  return v.get<std::int64_t>();
}

std::int64_t get_integer_or(const Json& j, const char* key, const std::string& path,
                            std::int64_t fallback) {
  return optional_member(j, key) ? get_integer(j, key, path) : fallback;
}

std::string get_string(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_string()) throw ParseError("expected a string", 0, path + "." + key);
  return v.get<std::string>();
}

bool get_bool(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_boolean()) throw ParseError("expected a boolean", 0, path + "." + key);
  return v.get<bool>();
}

UtcSeconds get_time(const Json& j, const char* key, const std::string& path) {
  const std::string text = get_string(j, key, path);
  try {
    return parse_iso8601(text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), 0, path + "." + key);
  }
}

Json time_or_null(const std::optional<UtcSeconds>& t) {
  return t ? Json(format_iso8601(*t)) : Json(nullptr);
}

Json to_json(const spectrum::FrequencyRange& r) {
  return Json{{"lowMhz", r.low_mhz}, {"highMhz", r.high_mhz}};
}

spectrum::FrequencyRange range_from_json(const Json& j, const std::string& path) {
  return {get_number(j, "lowMhz", path), get_number(j, "highMhz", path)};
}

Json to_json(const geo::Geofence& f) {
  return Json{{"center", wire::to_json(f.center)}, {"radiusM", f.radius_m}};
}

Json channel_json(const spectrum::ChannelId& ch) {
  Json j{{"bandwidthMhz", ch.bandwidth_mhz}, {"cfi", ch.number}};
  if (ch.variant != 0) j["variant"] = ch.variant;
  return j;
}

spectrum::ChannelId channel_from_json(const Json& j, const std::string& path) {
  spectrum::ChannelId ch{static_cast<int>(get_integer(j, "bandwidthMhz", path)),
                         static_cast<int>(get_integer(j, "cfi", path)),
                         static_cast<int>(get_integer_or(j, "variant", path, 0))};
  if (!spectrum::is_us_channel(ch)) {
    throw ParseError("not a US standard-power channel: " + spectrum::to_string(ch), 0, path);
  }
  return ch;
}

Json divergence_json(const afc::ChannelDivergence& d) {
  Json j = channel_json(d.channel);
  j["eirpADbm"] = d.eirp_a_dbm ? Json(round_dbm(*d.eirp_a_dbm)) : Json(nullptr);
  j["eirpBDbm"] = d.eirp_b_dbm ? Json(round_dbm(*d.eirp_b_dbm)) : Json(nullptr);
  return j;
}

}  // namespace

double round_dbm(double v) {
  const double r = std::round(v * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;  // no "-0.0" on the wire
}

Json to_json(const geo::GeoPoint& p) {
  return Json{{"latitude", p.lat_deg}, {"longitude", p.lon_deg}, {"heightM", p.height_m}};
}

geo::GeoPoint geo_point_from_json(const Json& j, const std::string& path) {
  geo::GeoPoint p{get_number(j, "latitude", path), get_number(j, "longitude", path),
                  get_number_or(j, "heightM", path, 0.0)};
  if (!geo::is_valid(p)) throw ParseError("coordinates out of range", 0, path);
  return p;
}

geo::Geofence geofence_from_json(const Json& j, const std::string& path) {
  return {geo_point_from_json(member(j, "center", path), path + ".center"),
          get_number(j, "radiusM", path)};
}

Json to_json(const afc::SpectrumInquiryRequest& req) {
  const auto& loc = req.location;
  Json location{{"latitude", loc.center.lat_deg},
                {"longitude", loc.center.lon_deg},
                {"majorAxisM", loc.major_axis_m},
                {"minorAxisM", loc.minor_axis_m},
                {"orientationDeg", loc.orientation_deg},
                {"gpsTime", format_iso8601(loc.gps_time)}};
  return Json{{"requestId", req.request_id},
              {"deviceSerial", req.device_serial},
              {"certificationId", req.certification_id},
              {"location", std::move(location)},
              {"heightM", req.height_m},
              {"inquiredBandwidthsMhz", req.inquired_bandwidths},
              {"transportAuthenticated", req.transport_authenticated}};
}

afc::SpectrumInquiryRequest request_from_json(const Json& j) {
  const std::string path = "request";
  afc::SpectrumInquiryRequest req;
  req.request_id = get_string(j, "requestId", path);
  req.device_serial = get_string(j, "deviceSerial", path);
  req.certification_id = get_string(j, "certificationId", path);

  const Json& loc = member(j, "location", path);
  const std::string lpath = path + ".location";
  // Range checks belong to the server (INVALID_REQUEST), so only types are
  // enforced here.
  req.location.center.lat_deg = get_number(loc, "latitude", lpath);
  req.location.center.lon_deg = get_number(loc, "longitude", lpath);
  req.location.major_axis_m = get_number(loc, "majorAxisM", lpath);
  req.location.minor_axis_m = get_number(loc, "minorAxisM", lpath);
  req.location.orientation_deg = get_number(loc, "orientationDeg", lpath);
  req.location.gps_time = get_time(loc, "gpsTime", lpath);

  req.height_m = get_number(j, "heightM", path);
  req.location.center.height_m = req.height_m;

  const Json& bws = member(j, "inquiredBandwidthsMhz", path);
  if (!bws.is_array()) throw ParseError("expected an array", 0, path + ".inquiredBandwidthsMhz");
  for (const auto& bw : bws) {
    if (!bw.is_number_integer()) {
      throw ParseError("expected integer bandwidths", 0, path + ".inquiredBandwidthsMhz");
    }
    req.inquired_bandwidths.push_back(bw.get<int>());
  }
  req.transport_authenticated = get_bool(j, "transportAuthenticated", path);
  return req;
}

Json to_json(const afc::ChannelGrant& grant) {
  Json j = channel_json(grant.channel);
  j["maxEirpDbm"] = round_dbm(grant.max_eirp_dbm);
  return j;
}

Json to_json(const afc::SpectrumInquiryResponse& resp) {
  Json grants = Json::array();
  for (const auto& g : resp.grants) grants.push_back(to_json(g));
  return Json{{"requestId", resp.request_id},
              {"responseCode", std::string(afc::to_string(resp.response_code))},
              {"countryCode", resp.country_code ? Json(*resp.country_code) : Json(nullptr)},
              {"issueTime", time_or_null(resp.issue_time)},
              {"expireTime", time_or_null(resp.expire_time)},
              {"grants", std::move(grants)}};
}

afc::SpectrumInquiryResponse response_from_json(const Json& j) {
  const std::string path = "response";
  afc::SpectrumInquiryResponse resp;
  resp.request_id = get_string(j, "requestId", path);
  const auto code = afc::parse_response_code(get_string(j, "responseCode", path));
  if (!code) throw ParseError("unknown response code", 0, path + ".responseCode");
  resp.response_code = *code;
  if (optional_member(j, "countryCode")) resp.country_code = get_string(j, "countryCode", path);
  if (optional_member(j, "issueTime")) resp.issue_time = get_time(j, "issueTime", path);
  if (optional_member(j, "expireTime")) resp.expire_time = get_time(j, "expireTime", path);
  if (const Json* grants = optional_member(j, "grants")) {
    if (!grants->is_array()) throw ParseError("expected an array", 0, path + ".grants");
    for (std::size_t i = 0; i < grants->size(); ++i) {
      const std::string gpath = path + ".grants[" + std::to_string(i) + "]";
      const Json& g = (*grants)[i];
      resp.grants.push_back({channel_from_json(g, gpath), get_number(g, "maxEirpDbm", gpath)});
    }
  }
  return resp;
}

Json to_json(const afc::IncumbentDatabase& db) {
  Json links = Json::array();
  for (const auto& l : db.fs_links) {
    links.push_back(Json{{"id", l.id},
                         {"rxLocation", to_json(l.rx_location)},
                         {"freqRange", to_json(l.freq_range)},
                         {"bandwidthMhz", l.bandwidth_mhz},
                         {"noiseFigureDb", l.noise_figure_db},
                         {"maxGainDbi", l.max_gain_dbi},
                         {"azimuthDeg", l.azimuth_deg},
                         {"beamwidthDeg", l.beamwidth_deg},
                         {"discriminationDb", l.discrimination_db}});
  }
  Json zones = Json::array();
  for (const auto& z : db.exclusion_zones) {
    zones.push_back(Json{{"name", z.name}, {"zone", to_json(z.zone)}, {"banned", to_json(z.banned)}});
  }
  return Json{{"fsLinks", std::move(links)}, {"exclusionZones", std::move(zones)}};
}

propagation::FsLink fs_link_from_json(const Json& j, const std::string& path) {
  propagation::FsLink l;
  l.id = get_string(j, "id", path);
  l.rx_location = geo_point_from_json(member(j, "rxLocation", path), path + ".rxLocation");
  l.freq_range = range_from_json(member(j, "freqRange", path), path + ".freqRange");
  l.bandwidth_mhz = get_number(j, "bandwidthMhz", path);
  l.noise_figure_db = get_number(j, "noiseFigureDb", path);
  l.max_gain_dbi = get_number(j, "maxGainDbi", path);
  l.azimuth_deg = get_number(j, "azimuthDeg", path);
  l.beamwidth_deg = get_number(j, "beamwidthDeg", path);
  l.discrimination_db = get_number(j, "discriminationDb", path);
  return l;
}

afc::IncumbentDatabase database_from_json(const Json& j) {
  afc::IncumbentDatabase db;
  if (!j.is_object()) throw ParseError("expected an object", 0, "database");
  // A misplaced document (a scenario, a request) would otherwise decode as an
  // empty database and grant everything at full power.
  for (const auto& [key, value] : j.items()) {
    if (key != "fsLinks" && key != "exclusionZones") {
      throw ParseError("unknown member", 0, "database." + key);
    }
  }
  if (const Json* links = optional_member(j, "fsLinks")) {
    if (!links->is_array()) throw ParseError("expected an array", 0, "fsLinks");
    for (std::size_t i = 0; i < links->size(); ++i) {
      db.fs_links.push_back(fs_link_from_json((*links)[i], "fsLinks[" + std::to_string(i) + "]"));
    }
  }
  if (const Json* zones = optional_member(j, "exclusionZones")) {
    if (!zones->is_array()) throw ParseError("expected an array", 0, "exclusionZones");
    for (std::size_t i = 0; i < zones->size(); ++i) {
      const std::string path = "exclusionZones[" + std::to_string(i) + "]";
      const Json& z = (*zones)[i];
      db.exclusion_zones.push_back(
          {get_string(z, "name", path), geofence_from_json(member(z, "zone", path), path + ".zone"),
           range_from_json(member(z, "banned", path), path + ".banned")});
    }
  }
  return db;
}

Json to_json(const afc::ServerPolicy& policy) {
  Json coverage = Json::array();
  for (const auto& b : policy.coverage) {
    coverage.push_back(Json{{"latMin", b.lat_min}, {"latMax", b.lat_max},
                            {"lonMin", b.lon_min}, {"lonMax", b.lon_max}});
  }
  Json fences = Json::object();
  for (const auto& [serial, fence] : policy.geofence_registry) fences[serial] = to_json(fence);
  return Json{{"grantLifetimeS", policy.grant_lifetime_s},
              {"gpsTimestampToleranceS", policy.gps_timestamp_tolerance_s},
              {"coverage", std::move(coverage)},
              {"geofences", std::move(fences)}};
}

afc::ServerPolicy policy_from_json(const Json& j) {
  const std::string path = "policy";
  if (!j.is_object()) throw ParseError("expected an object", 0, path);
  afc::ServerPolicy p;
  p.grant_lifetime_s = get_integer_or(j, "grantLifetimeS", path, p.grant_lifetime_s);
  p.gps_timestamp_tolerance_s =
      get_integer_or(j, "gpsTimestampToleranceS", path, p.gps_timestamp_tolerance_s);
  if (const Json* cov = optional_member(j, "coverage")) {
    if (!cov->is_array()) throw ParseError("expected an array", 0, path + ".coverage");
    p.coverage.clear();
    for (std::size_t i = 0; i < cov->size(); ++i) {
      const std::string bpath = path + ".coverage[" + std::to_string(i) + "]";
      const Json& b = (*cov)[i];
      p.coverage.push_back({get_number(b, "latMin", bpath), get_number(b, "latMax", bpath),
                            get_number(b, "lonMin", bpath), get_number(b, "lonMax", bpath)});
    }
  }
  if (const Json* fences = optional_member(j, "geofences")) {
    if (!fences->is_object()) throw ParseError("expected an object", 0, path + ".geofences");
    for (const auto& [serial, fence] : fences->items()) {
      p.geofence_registry[serial] = geofence_from_json(fence, path + ".geofences." + serial);
    }
  }
  return p;
}

propagation::PropagationConfig propagation_config_from_json(const Json& j) {
  const std::string path = "propagation";
  propagation::PropagationConfig c;
  c.regime_threshold_m = get_number_or(j, "regimeThresholdM", path, c.regime_threshold_m);
  c.clutter_offset_db = get_number_or(j, "clutterOffsetDb", path, c.clutter_offset_db);
  return c;
}

propagation::ProtectionConfig protection_config_from_json(const Json& j) {
  const std::string path = "protection";
  propagation::ProtectionConfig c;
  c.i_over_n_limit_db = get_number_or(j, "iOverNLimitDb", path, c.i_over_n_limit_db);
  c.regulatory_max_eirp_dbm =
      get_number_or(j, "regulatoryMaxEirpDbm", path, c.regulatory_max_eirp_dbm);
  c.min_useful_eirp_dbm = get_number_or(j, "minUsefulEirpDbm", path, c.min_useful_eirp_dbm);
  return c;
}

Json to_json(const afc::DivergenceReport& report) {
  Json requests = Json::array();
  for (const auto& r : report.requests) {
    Json a = Json::array(), b = Json::array(), d = Json::array();
    for (const auto& x : r.only_in_a) a.push_back(divergence_json(x));
    for (const auto& x : r.only_in_b) b.push_back(divergence_json(x));
    for (const auto& x : r.eirp_deltas) d.push_back(divergence_json(x));
    requests.push_back(Json{{"requestId", r.request_id},
                            {"onlyInA", std::move(a)},
                            {"onlyInB", std::move(b)},
                            {"eirpDeltas", std::move(d)}});
  }
  return Json{{"engineA", report.engine_a},
              {"engineB", report.engine_b},
              {"toleranceDb", report.tolerance_db},
              {"divergentRequests", std::move(requests)}};
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError("malformed JSON", line);
  }
}

Json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

}  // namespace afcsim::wire
