#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "afcsim/afc_server.hpp"
#include "afcsim/gnss_env.hpp"

namespace afcsim::ap {

enum class Phase { kNoFix, kFixAcquired, kRequestPending, kAuthorized, kDenied, kExpired };

std::string_view to_string(Phase phase);

struct GrantTable {
  std::vector<afc::ChannelGrant> table;
  UtcSeconds issue_time = 0;
  UtcSeconds expire_time = 0;
  std::optional<std::string> country_code;
};

struct ApState {
  Phase phase = Phase::kNoFix;
  std::optional<gnss::GnssFix> last_fix;
  std::optional<GrantTable> grants;
  // Attacker-manipulable skew of the AP's local clock.
  std::int64_t local_clock_offset_s = 0;
  // Server issue time of the last SUCCESS, in server (true) time.
  std::optional<UtcSeconds> last_issue_time;
  std::int64_t refresh_interval_s = kSecondsPerDay;
  bool reinquiry_due = false;
  int discarded_responses = 0;
};

struct ApConfig {
  std::string serial;
  std::string certification_id;
  double height_m = 0.0;
  std::int64_t refresh_interval_s = kSecondsPerDay;
  std::vector<int> inquired_bandwidths{20, 40, 80, 160, 320};
};

// Throws ValidationError.
void validate(const ApConfig& cfg);

ApState initial_state(const ApConfig& cfg);

// Events driving the AP state machine.
struct FixObtained {
  gnss::GnssFix fix;
};
struct FixLost {};
struct InquirySubmitted {};
struct ResponseReceived {
  afc::SpectrumInquiryResponse response;
  UtcSeconds local_now = 0;
};
struct ClockTick {
  UtcSeconds true_now = 0;
};
struct ClockOffsetSet {
  std::int64_t offset_s = 0;
};

using ApEvent =
    std::variant<FixObtained, FixLost, InquirySubmitted, ResponseReceived, ClockTick, ClockOffsetSet>;

// Total transition function: every (phase, event) pair has a successor.
ApState step(ApState state, const ApEvent& event);

UtcSeconds local_time(const ApState& state, UtcSeconds true_now);

// Request id defaults to "<serial>-<gps_time>". Throws NoFixAvailable.
afc::SpectrumInquiryRequest build_inquiry(const ApConfig& cfg,
                                          const std::optional<gnss::GnssFix>& fix,
                                          std::string request_id = {});

ApState apply_response(ApState state, const afc::SpectrumInquiryResponse& resp,
                       UtcSeconds local_now);

ApState tick(ApState state, UtcSeconds true_now);

bool can_transmit(const ApState& state, const spectrum::ChannelId& ch, double eirp_dbm);

// The channel the AP operates on: widest bandwidth, then highest EIRP, then
// lowest channel number. nullopt unless AUTHORIZED with a non-empty table.
std::optional<afc::ChannelGrant> select_operating_channel(const ApState& state);

// Console-style channel report: allowed channels per PHY type, clock and
// expiry fields, and the per-channel max EIRP block when channels exist.
std::string render_channel_report(const ApState& state, UtcSeconds now);

}  // namespace afcsim::ap
