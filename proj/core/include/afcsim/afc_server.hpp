#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afcsim/geo.hpp"
#include "afcsim/propagation.hpp"
#include "afcsim/spectrum_plan.hpp"
#include "afcsim/time_util.hpp"

namespace afcsim::afc {

enum class ResponseCode {
  kSuccess,
  kOutsideCoverage,
  kStaleTimestamp,
  kInvalidRequest,
  kDeviceDisallowed,
};

std::string_view to_string(ResponseCode code);
std::optional<ResponseCode> parse_response_code(std::string_view text);

struct SpectrumInquiryRequest {
  std::string request_id;
  std::string device_serial;
  std::string certification_id;
  geo::LocationEllipse location;
  double height_m = 0.0;
  std::vector<int> inquired_bandwidths;
  // Stands in for the mutually authenticated TLS session.
  bool transport_authenticated = true;

  friend bool operator==(const SpectrumInquiryRequest&, const SpectrumInquiryRequest&) = default;
};

struct ChannelGrant {
  spectrum::ChannelId channel;
  double max_eirp_dbm = 0.0;

  friend bool operator==(const ChannelGrant&, const ChannelGrant&) = default;
};

struct SpectrumInquiryResponse {
  std::string request_id;
  ResponseCode response_code = ResponseCode::kInvalidRequest;
  std::optional<std::string> country_code;
  std::vector<ChannelGrant> grants;
  std::optional<UtcSeconds> issue_time;
  std::optional<UtcSeconds> expire_time;

  friend bool operator==(const SpectrumInquiryResponse&, const SpectrumInquiryResponse&) = default;
};

struct CoverageBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  bool contains(const geo::GeoPoint& p) const {
    return p.lat_deg >= lat_min && p.lat_deg <= lat_max && p.lon_deg >= lon_min &&
           p.lon_deg <= lon_max;
  }
};

// Contiguous US, Alaska, Hawaii, Puerto Rico/USVI.
std::vector<CoverageBox> us_coverage();

struct ServerPolicy {
  std::int64_t grant_lifetime_s = kSecondsPerDay;
  std::int64_t gps_timestamp_tolerance_s = 60;
  std::vector<CoverageBox> coverage = us_coverage();
  std::map<std::string, geo::Geofence> geofence_registry;  // keyed by device serial
};

struct ExclusionZone {
  std::string name;
  geo::Geofence zone;
  spectrum::FrequencyRange banned;
};

struct IncumbentDatabase {
  std::vector<propagation::FsLink> fs_links;
  std::vector<ExclusionZone> exclusion_zones;
};

bool is_valid(const ServerPolicy& policy);

// Throws ValidationError naming the first broken invariant.
void validate(const IncumbentDatabase& db);

// kSuccess means the request may proceed to availability computation.
ResponseCode validate_request(const SpectrumInquiryRequest& req, UtcSeconds server_now,
                              const ServerPolicy& policy);

// Per-channel grants for a reported location. Channels inside a matching
// exclusion zone are dropped; every co-channel FS link is evaluated at the
// distance shrunk by the ellipse's major axis (never below 1 m). Output is
// ordered by bandwidth, then 320 MHz variant, then channel number.
std::vector<ChannelGrant> compute_availability(const geo::LocationEllipse& loc,
                                               std::span<const int> bandwidths,
                                               const IncumbentDatabase& db,
                                               const propagation::PropagationConfig& pcfg,
                                               const propagation::ProtectionConfig& prot);

// Distance used for protection math: max(1 m, d - major_axis_m).
double contracted_distance_m(const geo::LocationEllipse& loc, const geo::GeoPoint& rx);

SpectrumInquiryResponse handle_inquiry(const SpectrumInquiryRequest& req, UtcSeconds server_now,
                                       const IncumbentDatabase& db, const ServerPolicy& policy,
                                       const propagation::PropagationConfig& pcfg,
                                       const propagation::ProtectionConfig& prot);

// Bundles the read-only state a serving session needs.
class AfcServer {
 public:
  AfcServer(IncumbentDatabase db, ServerPolicy policy, propagation::PropagationConfig pcfg = {},
            propagation::ProtectionConfig prot = {});

  SpectrumInquiryResponse handle(const SpectrumInquiryRequest& req, UtcSeconds server_now) const;

  const IncumbentDatabase& database() const noexcept { return db_; }
  const ServerPolicy& policy() const noexcept { return policy_; }
  const propagation::PropagationConfig& propagation_config() const noexcept { return pcfg_; }
  const propagation::ProtectionConfig& protection_config() const noexcept { return prot_; }

 private:
  IncumbentDatabase db_;
  ServerPolicy policy_;
  propagation::PropagationConfig pcfg_;
  propagation::ProtectionConfig prot_;
};

}  // namespace afcsim::afc
