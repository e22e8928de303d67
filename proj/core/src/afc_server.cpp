#include "afcsim/afc_server.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "afcsim/errors.hpp"

namespace afcsim::afc {
namespace {

bool is_well_formed(const SpectrumInquiryRequest& req) {
  if (req.request_id.empty() || req.inquired_bandwidths.empty()) return false;
  if (!geo::is_valid(req.location)) return false;
  if (!std::isfinite(req.height_m) || req.height_m < 0.0) return false;
  return std::all_of(req.inquired_bandwidths.begin(), req.inquired_bandwidths.end(),
                     spectrum::is_supported_bandwidth);
}

bool in_coverage(const geo::GeoPoint& p, const std::vector<CoverageBox>& coverage) {
  return std::any_of(coverage.begin(), coverage.end(),
                     [&](const CoverageBox& b) { return b.contains(p); });
}

// Bandwidths in canonical order, duplicates removed.
std::vector<int> canonical_bandwidths(std::span<const int> bandwidths) {
  std::vector<int> out;
  for (int bw : spectrum::kBandwidthsMhz) {
    if (std::find(bandwidths.begin(), bandwidths.end(), bw) != bandwidths.end()) out.push_back(bw);
  }
  return out;
}

bool excluded(const geo::GeoPoint& center, const spectrum::FrequencyRange& span,
              const std::vector<ExclusionZone>& zones) {
  return std::any_of(zones.begin(), zones.end(), [&](const ExclusionZone& z) {
    return spectrum::overlaps(span, z.banned) && geo::within_geofence(center, z.zone);
  });
}

}  // namespace

std::string_view to_string(ResponseCode code) {
  switch (code) {
    case ResponseCode::kSuccess: return "SUCCESS";
    case ResponseCode::kOutsideCoverage: return "OUTSIDE_COVERAGE";
    case ResponseCode::kStaleTimestamp: return "STALE_TIMESTAMP";
    case ResponseCode::kInvalidRequest: return "INVALID_REQUEST";
    case ResponseCode::kDeviceDisallowed: return "DEVICE_DISALLOWED";
  }
  return "INVALID_REQUEST";
}

std::optional<ResponseCode> parse_response_code(std::string_view text) {
  for (auto c : {ResponseCode::kSuccess, ResponseCode::kOutsideCoverage,
                 ResponseCode::kStaleTimestamp, ResponseCode::kInvalidRequest,
                 ResponseCode::kDeviceDisallowed}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::vector<CoverageBox> us_coverage() {
  return {
      {24.4, 49.5, -125.0, -66.9},   // contiguous US
      {51.2, 71.5, -179.9, -129.9},  // Alaska
      {18.9, 22.3, -160.3, -154.8},  // Hawaii
      {17.6, 18.6, -67.3, -64.5},    // Puerto Rico, USVI
  };
}

bool is_valid(const ServerPolicy& policy) {
  if (policy.grant_lifetime_s <= 0 || policy.gps_timestamp_tolerance_s < 0) return false;
  return std::all_of(policy.geofence_registry.begin(), policy.geofence_registry.end(),
                     [](const auto& kv) { return geo::is_valid(kv.second); });
}

void validate(const IncumbentDatabase& db) {
  for (const auto& link : db.fs_links) {
    if (!propagation::is_valid(link)) {
      throw ValidationError("FS link '" + link.id + "' violates its field invariants");
    }
  }
  for (const auto& z : db.exclusion_zones) {
    if (!spectrum::is_within_band(z.banned)) {
      throw ValidationError("exclusion zone '" + z.name + "' bans a range outside 5925-7125 MHz");
    }
    if (!geo::is_valid(z.zone)) {
      throw ValidationError("exclusion zone '" + z.name + "' has an invalid fence");
    }
  }
}

ResponseCode validate_request(const SpectrumInquiryRequest& req, UtcSeconds server_now,
                              const ServerPolicy& policy) {
  if (!is_well_formed(req)) return ResponseCode::kInvalidRequest;
  if (!req.transport_authenticated) return ResponseCode::kDeviceDisallowed;
  if (std::llabs(req.location.gps_time - server_now) > policy.gps_timestamp_tolerance_s) {
    return ResponseCode::kStaleTimestamp;
  }
  if (!in_coverage(req.location.center, policy.coverage)) return ResponseCode::kOutsideCoverage;
  if (auto it = policy.geofence_registry.find(req.device_serial);
      it != policy.geofence_registry.end() &&
      !geo::within_geofence(req.location.center, it->second)) {
    return ResponseCode::kDeviceDisallowed;
  }
  return ResponseCode::kSuccess;
}

double contracted_distance_m(const geo::LocationEllipse& loc, const geo::GeoPoint& rx) {
  return std::max(1.0, geo::haversine_distance(loc.center, rx) - loc.major_axis_m);
}

std::vector<ChannelGrant> compute_availability(const geo::LocationEllipse& loc,
                                               std::span<const int> bandwidths,
                                               const IncumbentDatabase& db,
                                               const propagation::PropagationConfig& pcfg,
                                               const propagation::ProtectionConfig& prot) {
  // Geometry per link is channel-independent; compute it once.
  struct LinkGeometry {
    const propagation::FsLink* link;
    double distance_m;
    double gain_dbi;
  };
  std::vector<LinkGeometry> geometry;
  geometry.reserve(db.fs_links.size());
  for (const auto& link : db.fs_links) {
    geometry.push_back({&link, contracted_distance_m(loc, link.rx_location),
                        propagation::rx_gain_dbi_worst_case(link, loc.center, loc.major_axis_m)});
  }

  std::vector<ChannelGrant> grants;
  for (int bw : canonical_bandwidths(bandwidths)) {
    for (const auto& ch : spectrum::us_standard_power_channels(bw)) {
      const auto span = spectrum::channel_span(ch);
      if (excluded(loc.center, span, db.exclusion_zones)) continue;

      std::optional<double> eirp = prot.regulatory_max_eirp_dbm;
      for (const auto& g : geometry) {
        if (!spectrum::overlaps(span, g.link->freq_range)) continue;
        const auto limit =
            propagation::max_permissible_eirp_at(*g.link, g.distance_m, g.gain_dbi, pcfg, prot);
        if (!limit) {
          eirp.reset();
          break;
        }
        eirp = std::min(*eirp, *limit);
      }
      if (eirp) grants.push_back({ch, *eirp});
    }
  }
  return grants;
}

SpectrumInquiryResponse handle_inquiry(const SpectrumInquiryRequest& req, UtcSeconds server_now,
                                       const IncumbentDatabase& db, const ServerPolicy& policy,
                                       const propagation::PropagationConfig& pcfg,
                                       const propagation::ProtectionConfig& prot) {
  SpectrumInquiryResponse resp;
  resp.request_id = req.request_id;
  resp.response_code = validate_request(req, server_now, policy);
  if (resp.response_code != ResponseCode::kSuccess) return resp;

  resp.country_code = "US";
  resp.grants = compute_availability(req.location, req.inquired_bandwidths, db, pcfg, prot);
  resp.issue_time = server_now;
  resp.expire_time = server_now + policy.grant_lifetime_s;
  return resp;
}

AfcServer::AfcServer(IncumbentDatabase db, ServerPolicy policy,
                     propagation::PropagationConfig pcfg, propagation::ProtectionConfig prot)
    : db_(std::move(db)), policy_(std::move(policy)), pcfg_(pcfg), prot_(prot) {
  validate(db_);
  if (!is_valid(policy_)) throw ValidationError("server policy violates its invariants");
  if (!propagation::is_valid(pcfg_)) throw ValidationError("invalid propagation config");
  if (!propagation::is_valid(prot_)) throw ValidationError("invalid protection config");
}

SpectrumInquiryResponse AfcServer::handle(const SpectrumInquiryRequest& req,
                                          UtcSeconds server_now) const {
  return handle_inquiry(req, server_now, db_, policy_, pcfg_, prot_);
}

}  // namespace afcsim::afc
