#include "afcsim/simulation.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "afcsim/errors.hpp"

namespace afcsim::scenario {
namespace {

using wire::Json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent stream per (event, AP) so adding an AP does not perturb the
// others' noise.
std::uint64_t fix_seed(std::uint64_t seed, std::size_t event_index, std::size_t ap_index) {
  return splitmix64(splitmix64(seed) ^ splitmix64((event_index << 20) + ap_index));
}

struct ApRuntime {
  const ApSpec* spec;
  ap::ApState state;
  std::optional<afc::SpectrumInquiryResponse> last_response;
};

class Runner {
 public:
  explicit Runner(const Scenario& s) : s_(s), server_(make_server(s)) {
    report_.scenario = s.name;
    report_.seed = s.seed;
    report_.final_time = s.start_time;
    for (const auto& ap : s.aps) aps_.push_back({&ap, ap::initial_state(ap.config), std::nullopt});
  }

  ScenarioReport run() {
    for (std::size_t i = 0; i < s_.timeline.size(); ++i) {
      const auto& ev = s_.timeline[i];
      now_ = s_.start_time + ev.at_s;
      at_ = ev.at_s;
      report_.final_time = now_;
      tick_all();
      switch (ev.action) {
        case Action::kAdvanceClock:
          log("ADVANCE_CLOCK", "", "clock at " + format_iso8601(now_));
          break;
        case Action::kSetApClockOffset:
          for (auto* ap : targets(ev)) set_offset(*ap, ev.offset_s);
          break;
        case Action::kRunInquiry:
          for (auto* ap : targets(ev)) inquire(*ap, i);
          break;
        case Action::kRunDetectors:
          run_detectors(ev);
          break;
      }
      check_compliance();
    }
    finish();
    return std::move(report_);
  }

 private:
  static afc::AfcServer make_server(const Scenario& s) {
    afc::ServerPolicy policy = s.world.policy;
    for (const auto& ap : s.aps) {
      if (ap.geofence) policy.geofence_registry[ap.config.serial] = *ap.geofence;
    }
    return afc::AfcServer(s.world.incumbents, std::move(policy), s.world.propagation,
                          s.world.protection);
  }

  void log(std::string action, std::string ap_id, std::string detail) {
    report_.events.push_back({at_, now_, std::move(action), std::move(ap_id), std::move(detail)});
  }

  std::vector<ApRuntime*> targets(const TimelineEvent& ev) {
    std::vector<ApRuntime*> out;
    for (auto& ap : aps_) {
      if (!ev.ap_id || *ev.ap_id == ap.spec->id) out.push_back(&ap);
    }
    return out;
  }

  void advance(ApRuntime& ap, const ap::ApEvent& event) {
    const auto before = ap.state.phase;
    const bool due_before = ap.state.reinquiry_due;
    ap.state = ap::step(std::move(ap.state), event);
    if (ap.state.phase != before) {
      log("STATE", ap.spec->id,
          std::string(ap::to_string(before)) + " -> " + std::string(ap::to_string(ap.state.phase)));
    }
    if (ap.state.reinquiry_due && !due_before) log("STATE", ap.spec->id, "re-inquiry due");
  }

  void tick_all() {
    for (auto& ap : aps_) advance(ap, ap::ClockTick{now_});
  }

  void set_offset(ApRuntime& ap, std::int64_t offset_s) {
    log("SET_AP_CLOCK_OFFSET", ap.spec->id, "local clock offset " + std::to_string(offset_s) + " s");
    advance(ap, ap::ClockOffsetSet{offset_s});
    advance(ap, ap::ClockTick{now_});
  }

  void inquire(ApRuntime& ap, std::size_t event_index) {
    const ApSpec& spec = *ap.spec;
    std::vector<gnss::GnssSource> sources;
    sources.push_back(
        {gnss::SourceKind::kLegit, spec.true_position, s_.legit_gnss_power_dbm, 0});
    for (const auto& sp : s_.spoofers) {
      if (!sp.active_at(at_)) continue;
      sources.push_back({gnss::SourceKind::kSpoofer, sp.broadcast_position,
                         gnss::received_power_dbm(sp.tx_power_dbm, sp.position, spec.true_position),
                         sp.time_offset_s});
    }
    const std::size_t ap_index = static_cast<std::size_t>(&ap - aps_.data());
    const auto fix = gnss::compute_fix(spec.true_position, sources, now_, s_.gnss_noise,
                                       fix_seed(s_.seed, event_index, ap_index));
    if (!fix) {
      advance(ap, ap::FixLost{});
      log("RUN_INQUIRY", spec.id, "no GNSS fix; inquiry not sent");
      return;
    }
    advance(ap, ap::FixObtained{*fix});

    const auto req =
        ap::build_inquiry(spec.config, fix, spec.id + "-" + std::to_string(event_index));
    advance(ap, ap::InquirySubmitted{});
    auto resp = server_.handle(req, now_);
    log("RUN_INQUIRY", spec.id,
        std::string(afc::to_string(resp.response_code)) + ", " +
            std::to_string(resp.grants.size()) + " grants, fix from " +
            (fix->winning_kind == gnss::SourceKind::kSpoofer ? "spoofer" : "legit") + " at (" +
            std::to_string(fix->ellipse.center.lat_deg) + ", " +
            std::to_string(fix->ellipse.center.lon_deg) + ")");
    advance(ap, ap::ResponseReceived{resp, ap::local_time(ap.state, now_)});
    ap.last_response = std::move(resp);
  }

  void run_detectors(const TimelineEvent& ev) {
    std::map<std::string, geo::GeoPoint> reported, deployed;
    for (auto* ap : targets(ev)) {
      if (!ap->state.last_fix) continue;
      const auto& center = ap->state.last_fix->ellipse.center;
      reported[ap->spec->id] = center;
      deployed[ap->spec->id] = ap->spec->deployment_registration;
      if (ap->spec->geofence) {
        auto v = defense::geofence_check(center, *ap->spec->geofence);
        v.detail = ap->spec->id + ": " + v.detail;
        log("RUN_DETECTORS", ap->spec->id,
            std::string("geofence ") + (v.alarm ? "ALARM" : "ok") + ", " + v.detail);
        report_.detections.push_back(std::move(v));
      }
    }
    if (reported.size() >= 2) {
      auto v = defense::group_consistency_check(reported, deployed, s_.world.group_threshold_m);
      log("RUN_DETECTORS", "",
          std::string("group consistency ") + (v.alarm ? "ALARM" : "ok") + ", " + v.detail);
      report_.detections.push_back(std::move(v));
    } else {
      log("RUN_DETECTORS", "", "group consistency skipped: fewer than 2 APs with a fix");
    }
  }

  void check_compliance() {
    for (auto& ap : aps_) {
      const auto& st = ap.state;
      if (st.phase == ap::Phase::kAuthorized && st.grants && now_ >= st.grants->expire_time) {
        report_.compliance_violations.push_back(
            {ap.spec->id, at_, st.grants->expire_time, st.local_clock_offset_s,
             "AP still authorized " + std::to_string(now_ - st.grants->expire_time) +
                 " s past grant expiry (local clock offset " +
                 std::to_string(st.local_clock_offset_s) + " s)"});
      }
    }
  }

  void finish() {
    std::vector<TransmitterInput> inputs;
    for (auto& ap : aps_) {
      ApOutcome out;
      out.id = ap.spec->id;
      out.state = ap.state;
      out.last_response = ap.last_response;
      out.operating = ap::select_operating_channel(ap.state);
      out.channel_report =
          ap::render_channel_report(ap.state, ap::local_time(ap.state, report_.final_time));
      inputs.push_back({out.id, ap.spec->true_position, ap.state.phase, out.operating});
      report_.aps.push_back(std::move(out));
    }
    report_.harm = assess_harm(inputs, s_.world);
  }

  const Scenario& s_;
  afc::AfcServer server_;
  std::vector<ApRuntime> aps_;
  ScenarioReport report_;
  UtcSeconds now_ = 0;
  std::int64_t at_ = 0;
};

Json channel_json(const spectrum::ChannelId& ch) {
  Json j{{"bandwidthMhz", ch.bandwidth_mhz}, {"cfi", ch.number}};
  if (ch.variant != 0) j["variant"] = ch.variant;
  return j;
}

Json fix_json(const gnss::GnssFix& fix) {
  const auto& e = fix.ellipse;
  return Json{{"latitude", e.center.lat_deg},
              {"longitude", e.center.lon_deg},
              {"majorAxisM", e.major_axis_m},
              {"minorAxisM", e.minor_axis_m},
              {"orientationDeg", e.orientation_deg},
              {"gpsTime", format_iso8601(e.gps_time)},
              {"winningKind", fix.winning_kind == gnss::SourceKind::kSpoofer ? "SPOOFER" : "LEGIT"}};
}

}  // namespace

const ApOutcome* ScenarioReport::find_ap(const std::string& id) const {
  for (const auto& ap : aps) {
    if (ap.id == id) return &ap;
  }
  return nullptr;
}

ScenarioReport run_scenario(const Scenario& s) { return Runner(s).run(); }

wire::Json to_json(const ScenarioReport& report) {
  Json events = Json::array();
  for (const auto& e : report.events) {
    events.push_back(Json{{"at", e.at_s},
                          {"time", format_iso8601(e.time)},
                          {"action", e.action},
                          {"ap", e.ap_id},
                          {"detail", e.detail}});
  }

  Json aps = Json::array();
  for (const auto& ap : report.aps) {
    Json grants = Json::array();
    if (ap.state.grants) {
      for (const auto& g : ap.state.grants->table) grants.push_back(wire::to_json(g));
    }
    aps.push_back(Json{
        {"id", ap.id},
        {"phase", std::string(ap::to_string(ap.state.phase))},
        {"localClockOffsetS", ap.state.local_clock_offset_s},
        {"lastFix", ap.state.last_fix ? fix_json(*ap.state.last_fix) : Json(nullptr)},
        {"lastResponse", ap.last_response ? wire::to_json(*ap.last_response) : Json(nullptr)},
        {"grants", std::move(grants)},
        {"expireTime", ap.state.grants ? Json(format_iso8601(ap.state.grants->expire_time))
                                       : Json(nullptr)},
        {"operatingChannel", ap.operating ? wire::to_json(*ap.operating) : Json(nullptr)},
        {"channelReport", ap.channel_report}});
  }

  Json rows = Json::array();
  for (const auto& r : report.harm.rows) {
    rows.push_back(Json{{"ap", r.ap_id},
                        {"linkId", r.link_id},
                        {"channel", channel_json(r.channel)},
                        {"eirpDbm", wire::round_dbm(r.eirp_dbm)},
                        {"distanceM", std::round(r.distance_m * 100.0) / 100.0},
                        {"iOverNDb", wire::round_dbm(r.i_over_n_db)},
                        {"violated", r.violated}});
  }
  Json worst = Json::object();
  for (const auto& [link, v] : report.harm.metrics.worst_i_over_n_db) {
    worst[link] = wire::round_dbm(v);
  }

  Json detections = Json::array();
  for (const auto& d : report.detections) {
    detections.push_back(Json{{"detector", d.detector},
                              {"alarm", d.alarm},
                              {"scoreM", std::round(d.score_m * 100.0) / 100.0},
                              {"thresholdM", d.threshold_m},
                              {"detail", d.detail}});
  }

  Json compliance = Json::array();
  for (const auto& c : report.compliance_violations) {
    compliance.push_back(Json{{"ap", c.ap_id},
                              {"at", c.at_s},
                              {"expireTime", format_iso8601(c.expire_time)},
                              {"localClockOffsetS", c.local_clock_offset_s},
                              {"detail", c.detail}});
  }

  return Json{{"scenario", report.scenario},
              {"seed", report.seed},
              {"finalTime", format_iso8601(report.final_time)},
              {"events", std::move(events)},
              {"aps", std::move(aps)},
              {"harm",
               Json{{"rows", std::move(rows)},
                    {"worstIOverNDb", std::move(worst)},
                    {"violationCount", report.harm.metrics.violation_count}}},
              {"detections", std::move(detections)},
              {"complianceViolations", std::move(compliance)}};
}

void write_report(const ScenarioReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create '" + out_dir + "': " + ec.message());

  auto write = [](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
  };
  write(fs::path(out_dir) / "report.json", to_json(report).dump(2) + "\n");
  for (const auto& ap : report.aps) {
    write(fs::path(out_dir) / (ap.id + ".channels.txt"), ap.channel_report);
  }
}

}  // namespace afcsim::scenario
