#include <gtest/gtest.h>

#include <set>

#include "afcsim/afc_server.hpp"
#include "afcsim/ap_client.hpp"
#include "afcsim/errors.hpp"
#include "afcsim/time_util.hpp"
#include "oracles.hpp"
#include "paths.hpp"

namespace afcsim::ap {
namespace {

const UtcSeconds kIssue = parse_iso8601("2025-06-20T05:10:00Z");
const geo::GeoPoint kConsoleFix{30.087050, -101.103714};

ApConfig config() {
  ApConfig cfg;
  cfg.serial = "CNR7KSV0XX";
  cfg.certification_id = "FCC-Q9DAPIN634";
  cfg.height_m = 6.0;
  return cfg;
}

gnss::GnssFix fix_at(geo::GeoPoint where, UtcSeconds t = kIssue) {
  gnss::GnssFix fix;
  fix.ellipse.center = where;
  fix.ellipse.major_axis_m = 18.0;
  fix.ellipse.minor_axis_m = 9.0;
  fix.ellipse.orientation_deg = 120.0;
  fix.ellipse.gps_time = t;
  return fix;
}

afc::SpectrumInquiryResponse full_grant() {
  afc::SpectrumInquiryRequest req = build_inquiry(config(), fix_at(kConsoleFix));
  return afc::AfcServer({}, {}).handle(req, kIssue);
}

afc::SpectrumInquiryResponse rejection(afc::ResponseCode code) {
  afc::SpectrumInquiryResponse resp;
  resp.request_id = "r";
  resp.response_code = code;
  return resp;
}

ApState pending() {
  ApState s = initial_state(config());
  s = step(s, FixObtained{fix_at(kConsoleFix)});
  return step(s, InquirySubmitted{});
}

ApState authorized() { return step(pending(), ResponseReceived{full_grant(), kIssue}); }

TEST(Inquiry, CarriesTheFixVerbatim) {
  const auto req = build_inquiry(config(), fix_at(kConsoleFix));
  EXPECT_DOUBLE_EQ(req.location.center.lat_deg, 30.087050);
  EXPECT_DOUBLE_EQ(req.location.center.lon_deg, -101.103714);
  EXPECT_EQ(req.location.gps_time, kIssue);
  EXPECT_DOUBLE_EQ(req.location.major_axis_m, 18.0);
  EXPECT_EQ(req.request_id, "CNR7KSV0XX-" + std::to_string(kIssue));
  EXPECT_EQ(req.inquired_bandwidths, (std::vector<int>{20, 40, 80, 160, 320}));
  EXPECT_TRUE(req.transport_authenticated);
}

TEST(Inquiry, ForeignFixIsNotCorrected) {
  const auto req = build_inquiry(config(), fix_at({30.0, 120.0}), "custom");
  EXPECT_DOUBLE_EQ(req.location.center.lat_deg, 30.0);
  EXPECT_DOUBLE_EQ(req.location.center.lon_deg, 120.0);
  EXPECT_EQ(req.request_id, "custom");
}

TEST(Inquiry, NoFixIsAnError) {
  EXPECT_THROW(build_inquiry(config(), std::nullopt), NoFixAvailable);
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(validate(config()));
  ApConfig cfg = config();
  cfg.serial.clear();
  EXPECT_THROW(validate(cfg), ValidationError);
  cfg = config();
  cfg.refresh_interval_s = 0;
  EXPECT_THROW(validate(cfg), ValidationError);
  cfg = config();
  cfg.inquired_bandwidths = {20, 60};
  EXPECT_THROW(validate(cfg), UnsupportedBandwidth);
}

TEST(StateMachine, HappyPath) {
  ApState s = initial_state(config());
  EXPECT_EQ(s.phase, Phase::kNoFix);
  s = step(s, InquirySubmitted{});
  EXPECT_EQ(s.phase, Phase::kNoFix);
  s = step(s, FixObtained{fix_at(kConsoleFix)});
  EXPECT_EQ(s.phase, Phase::kFixAcquired);
  s = step(s, InquirySubmitted{});
  EXPECT_EQ(s.phase, Phase::kRequestPending);
  s = step(s, ResponseReceived{full_grant(), kIssue});
  EXPECT_EQ(s.phase, Phase::kAuthorized);
  ASSERT_TRUE(s.grants.has_value());
  EXPECT_EQ(s.grants->table.size(), 76u);
  EXPECT_EQ(s.grants->expire_time, kIssue + kSecondsPerDay);
}

TEST(StateMachine, RejectionsDeny) {
  for (auto code : {afc::ResponseCode::kOutsideCoverage, afc::ResponseCode::kStaleTimestamp,
                    afc::ResponseCode::kDeviceDisallowed, afc::ResponseCode::kInvalidRequest}) {
    const ApState s = step(pending(), ResponseReceived{rejection(code), kIssue});
    EXPECT_EQ(s.phase, Phase::kDenied);
    EXPECT_FALSE(s.grants.has_value());
  }
}

TEST(StateMachine, UnsolicitedResponsesAreDiscarded) {
  ApState s = initial_state(config());
  s = step(s, FixObtained{fix_at(kConsoleFix)});
  s = step(s, ResponseReceived{full_grant(), kIssue});
  EXPECT_EQ(s.phase, Phase::kFixAcquired);
  EXPECT_EQ(s.discarded_responses, 1);
  s = step(authorized(), ResponseReceived{rejection(afc::ResponseCode::kOutsideCoverage), kIssue});
  EXPECT_EQ(s.phase, Phase::kAuthorized);
  EXPECT_EQ(s.discarded_responses, 1);
}

TEST(StateMachine, LosingTheFixKeepsAnExistingAuthorization) {
  ApState s = step(authorized(), FixLost{});
  EXPECT_EQ(s.phase, Phase::kAuthorized);
  EXPECT_FALSE(s.last_fix.has_value());
  s = step(s, InquirySubmitted{});
  EXPECT_EQ(s.phase, Phase::kAuthorized);

  ApState acquired = step(initial_state(config()), FixObtained{fix_at(kConsoleFix)});
  EXPECT_EQ(step(acquired, FixLost{}).phase, Phase::kNoFix);
}

TEST(StateMachine, EveryPhaseAcceptsEveryEvent) {
  const std::vector<ApEvent> events{FixObtained{fix_at(kConsoleFix)}, FixLost{},
                                    InquirySubmitted{},
                                    ResponseReceived{full_grant(), kIssue},
                                    ClockTick{kIssue + 2 * kSecondsPerDay}, ClockOffsetSet{-5}};
  std::vector<ApState> states{initial_state(config()), pending(), authorized()};
  states.push_back(step(pending(), ResponseReceived{rejection(afc::ResponseCode::kStaleTimestamp),
                                                    kIssue}));
  states.push_back(tick(authorized(), kIssue + kSecondsPerDay));
  for (const auto& s : states) {
    for (const auto& e : events) EXPECT_NO_THROW(step(s, e));
  }
}

TEST(Expiry, BoundaryIsExclusive) {
  const UtcSeconds expire = kIssue + kSecondsPerDay;
  EXPECT_EQ(tick(authorized(), expire - 1).phase, Phase::kAuthorized);
  const ApState expired = tick(authorized(), expire);
  EXPECT_EQ(expired.phase, Phase::kExpired);
  EXPECT_FALSE(can_transmit(expired, {20, 1, 0}, 0.0));
  EXPECT_EQ(oracle::parse_fields(render_channel_report(expired, expire))["AFC channel expired"],
            "Yes");
}

TEST(Expiry, ClockRollbackKeepsTheGrantAlive) {
  ApState s = step(authorized(), ClockOffsetSet{-2 * kSecondsPerDay});
  s = tick(s, kIssue + kSecondsPerDay + 3600);
  EXPECT_EQ(s.phase, Phase::kAuthorized);
  EXPECT_TRUE(can_transmit(s, {20, 1, 0}, 36.0));
  EXPECT_EQ(local_time(s, kIssue), kIssue - 2 * kSecondsPerDay);
}

TEST(Expiry, ResponseAlreadyExpiredOnArrival) {
  const ApState s = step(pending(), ResponseReceived{full_grant(), kIssue + kSecondsPerDay});
  EXPECT_EQ(s.phase, Phase::kExpired);
}

TEST(Refresh, TickRaisesReinquiryDue) {
  ApConfig cfg = config();
  cfg.refresh_interval_s = 3600;
  ApState s = initial_state(cfg);
  s = step(s, FixObtained{fix_at(kConsoleFix)});
  s = step(s, InquirySubmitted{});
  s = step(s, ResponseReceived{full_grant(), kIssue});
  EXPECT_FALSE(tick(s, kIssue + 3599).reinquiry_due);
  EXPECT_TRUE(tick(s, kIssue + 3600).reinquiry_due);
}

TEST(Transmit, CapIsEnforced) {
  const ApState s = authorized();
  EXPECT_TRUE(can_transmit(s, {20, 1, 0}, 36.0));
  EXPECT_FALSE(can_transmit(s, {20, 1, 0}, 36.1));
  EXPECT_FALSE(can_transmit(s, {20, 97, 0}, 10.0));
  const ApState denied =
      step(pending(), ResponseReceived{rejection(afc::ResponseCode::kOutsideCoverage), kIssue});
  EXPECT_FALSE(can_transmit(denied, {20, 1, 0}, 0.0));
}

TEST(OperatingChannel, WidestThenStrongestThenLowest) {
  EXPECT_EQ(select_operating_channel(authorized())->channel, (spectrum::ChannelId{320, 1, 1}));
  ApState s = authorized();
  s.grants->table = {{{40, 9, 0}, 30.0}, {{40, 1, 0}, 30.0}, {{80, 17, 0}, 22.0},
                     {{80, 33, 0}, 25.0}, {{20, 5, 0}, 36.0}};
  EXPECT_EQ(select_operating_channel(s)->channel, (spectrum::ChannelId{80, 33, 0}));
  s.grants->table = {{{40, 9, 0}, 30.0}, {{40, 1, 0}, 30.0}};
  EXPECT_EQ(select_operating_channel(s)->channel, (spectrum::ChannelId{40, 1, 0}));
  EXPECT_FALSE(select_operating_channel(pending()).has_value());
}

TEST(Report, AuthorizedMatchesGolden) {
  const std::string golden = testpaths::read_file(testpaths::source("tests/golden/a1_channels.txt"));
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(render_channel_report(authorized(), parse_iso8601("2025-06-20T05:13:13Z")), golden);
}

TEST(Report, DeniedMatchesGolden) {
  const std::string golden = testpaths::read_file(testpaths::source("tests/golden/a2_channels.txt"));
  ASSERT_FALSE(golden.empty());
  const ApState s =
      step(pending(), ResponseReceived{rejection(afc::ResponseCode::kOutsideCoverage), kIssue});
  EXPECT_EQ(render_channel_report(s, parse_iso8601("2025-06-20T11:36:04Z")), golden);
}

TEST(Report, ParsesBackToTheGrantTable) {
  ApState s = authorized();
  // Drop a scattered subset to exercise wrapping at different offsets.
  std::erase_if(s.grants->table, [](const afc::ChannelGrant& g) {
    return g.channel.bandwidth_mhz == 20 && g.channel.number % 3 == 0;
  });
  const auto parsed = oracle::parse_allowed_channels(render_channel_report(s, kIssue));
  const std::map<std::string, std::pair<int, int>> rows{
      {"6GHz", {20, 0}},         {"6GHz 40MHz", {40, 0}},   {"6GHz 80MHz", {80, 0}},
      {"6GHz 160MHz", {160, 0}}, {"6GHz 320MHz_1", {320, 1}}, {"6GHz 320MHz_2", {320, 2}}};
  for (const auto& [label, key] : rows) {
    std::vector<int> expected;
    for (const auto& g : s.grants->table) {
      if (g.channel.bandwidth_mhz == key.first && g.channel.variant == key.second) {
        expected.push_back(g.channel.number);
      }
    }
    ASSERT_TRUE(parsed.count(label)) << label;
    EXPECT_EQ(parsed.at(label), expected) << label;
  }
  EXPECT_TRUE(parsed.at("6GHz 80+80MHz").empty());
}

TEST(Report, LinesStayWithinSixtyColumns) {
  const std::string report = render_channel_report(authorized(), kIssue);
  const std::string allowed = report.substr(0, report.find("\n\n"));
  std::size_t start = 0;
  while (start < allowed.size()) {
    const auto end = allowed.find('\n', start);
    EXPECT_LE((end == std::string::npos ? allowed.size() : end) - start, 60u);
    if (end == std::string::npos) break;
    start = end + 1;
  }
}

}  // namespace
}  // namespace afcsim::ap
