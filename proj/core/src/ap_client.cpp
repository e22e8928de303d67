#include "afcsim/ap_client.hpp"

#include <algorithm>
#include <tuple>

#include "afcsim/errors.hpp"

namespace afcsim::ap {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kNoFix: return "NO_FIX";
    case Phase::kFixAcquired: return "FIX_ACQUIRED";
    case Phase::kRequestPending: return "REQUEST_PENDING";
    case Phase::kAuthorized: return "AUTHORIZED";
    case Phase::kDenied: return "DENIED";
    case Phase::kExpired: return "EXPIRED";
  }
  return "NO_FIX";
}

void validate(const ApConfig& cfg) {
  if (cfg.serial.empty()) throw ValidationError("AP serial must be non-empty");
  if (cfg.refresh_interval_s <= 0 || cfg.refresh_interval_s > kSecondsPerDay) {
    throw ValidationError("AP '" + cfg.serial + "': refresh interval must be in (0, 86400] s");
  }
  if (cfg.height_m < 0.0) throw ValidationError("AP '" + cfg.serial + "': negative height");
  if (cfg.inquired_bandwidths.empty()) {
    throw ValidationError("AP '" + cfg.serial + "': no inquired bandwidths");
  }
  for (int bw : cfg.inquired_bandwidths) {
    if (!spectrum::is_supported_bandwidth(bw)) throw UnsupportedBandwidth(bw);
  }
}

ApState initial_state(const ApConfig& cfg) {
  ApState s;
  s.refresh_interval_s = cfg.refresh_interval_s;
  return s;
}

UtcSeconds local_time(const ApState& state, UtcSeconds true_now) {
  return true_now + state.local_clock_offset_s;
}

afc::SpectrumInquiryRequest build_inquiry(const ApConfig& cfg,
                                          const std::optional<gnss::GnssFix>& fix,
                                          std::string request_id) {
  if (!fix) throw NoFixAvailable();
  afc::SpectrumInquiryRequest req;
  req.request_id =
      request_id.empty() ? cfg.serial + "-" + std::to_string(fix->ellipse.gps_time) : request_id;
  req.device_serial = cfg.serial;
  req.certification_id = cfg.certification_id;
  req.location = fix->ellipse;
  req.height_m = cfg.height_m;
  req.location.center.height_m = cfg.height_m;
  req.inquired_bandwidths = cfg.inquired_bandwidths;
  req.transport_authenticated = true;
  return req;
}

ApState apply_response(ApState state, const afc::SpectrumInquiryResponse& resp,
                       UtcSeconds local_now) {
  const bool usable = resp.response_code == afc::ResponseCode::kSuccess && resp.issue_time &&
                      resp.expire_time;
  if (!usable) {
    state.phase = Phase::kDenied;
    state.grants.reset();
    return state;
  }
  state.grants = GrantTable{resp.grants, *resp.issue_time, *resp.expire_time, resp.country_code};
  state.last_issue_time = resp.issue_time;
  state.reinquiry_due = false;
  state.phase = Phase::kAuthorized;
  if (local_now >= *resp.expire_time) {
    state.phase = Phase::kExpired;
    state.grants.reset();
  }
  return state;
}

ApState tick(ApState state, UtcSeconds true_now) {
  const UtcSeconds local_now = local_time(state, true_now);
  if (state.phase == Phase::kAuthorized && state.grants && local_now >= state.grants->expire_time) {
    state.phase = Phase::kExpired;
    state.grants.reset();
  }
  if (state.last_issue_time && local_now >= *state.last_issue_time + state.refresh_interval_s) {
    state.reinquiry_due = true;
  }
  return state;
}

ApState step(ApState state, const ApEvent& event) {
  return std::visit(
      Overloaded{
          [&](const FixObtained& e) {
            const bool moved = !state.last_fix ||
                               state.last_fix->ellipse.center != e.fix.ellipse.center;
            if (state.phase == Phase::kDenied && moved) state.reinquiry_due = true;
            if (state.phase == Phase::kNoFix) state.phase = Phase::kFixAcquired;
            state.last_fix = e.fix;
            return state;
          },
          [&](const FixLost&) {
            state.last_fix.reset();
            if (state.phase == Phase::kFixAcquired) state.phase = Phase::kNoFix;
            return state;
          },
          [&](const InquirySubmitted&) {
            if (state.last_fix) {
              state.phase = Phase::kRequestPending;
              state.reinquiry_due = false;
            }
            return state;
          },
          [&](const ResponseReceived& e) {
            if (state.phase != Phase::kRequestPending) {
              ++state.discarded_responses;
              return state;
            }
            return apply_response(std::move(state), e.response, e.local_now);
          },
          [&](const ClockTick& e) { return tick(std::move(state), e.true_now); },
          [&](const ClockOffsetSet& e) {
            state.local_clock_offset_s = e.offset_s;
            return state;
          },
      },
      event);
}

bool can_transmit(const ApState& state, const spectrum::ChannelId& ch, double eirp_dbm) {
  if (state.phase != Phase::kAuthorized || !state.grants) return false;
  const auto& table = state.grants->table;
  auto it = std::find_if(table.begin(), table.end(),
                         [&](const afc::ChannelGrant& g) { return g.channel == ch; });
  return it != table.end() && eirp_dbm <= it->max_eirp_dbm;
}

std::optional<afc::ChannelGrant> select_operating_channel(const ApState& state) {
  if (state.phase != Phase::kAuthorized || !state.grants || state.grants->table.empty()) {
    return std::nullopt;
  }
  const auto& table = state.grants->table;
  auto rank = [](const afc::ChannelGrant& g) {
    return std::make_tuple(g.channel.bandwidth_mhz, g.max_eirp_dbm, -g.channel.number,
                           -g.channel.variant);
  };
  return *std::max_element(table.begin(), table.end(),
                           [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
}

}  // namespace afcsim::ap
