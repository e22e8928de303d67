#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afcsim/harm.hpp"
#include "afcsim/scenario.hpp"
#include "afcsim/wire.hpp"

namespace afcsim::scenario {

struct EventLogEntry {
  std::int64_t at_s = 0;
  UtcSeconds time = 0;
  std::string action;
  std::string ap_id;  // empty for world-level entries
  std::string detail;
};

struct ApOutcome {
  std::string id;
  ap::ApState state;
  std::optional<afc::SpectrumInquiryResponse> last_response;
  std::optional<afc::ChannelGrant> operating;
  std::string channel_report;
};

struct ComplianceViolation {
  std::string ap_id;
  std::int64_t at_s = 0;
  UtcSeconds expire_time = 0;
  std::int64_t local_clock_offset_s = 0;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::uint64_t seed = 0;
  UtcSeconds final_time = 0;
  std::vector<EventLogEntry> events;
  std::vector<ApOutcome> aps;
  HarmAssessment harm;
  std::vector<defense::DetectionVerdict> detections;
  std::vector<ComplianceViolation> compliance_violations;

  const ApOutcome* find_ap(const std::string& id) const;
};

// Executes the timeline in order under the scenario seed. Never throws for
// protocol outcomes; rejections and alarms are report rows.
ScenarioReport run_scenario(const Scenario& s);

wire::Json to_json(const ScenarioReport& report);

// Writes report.json and <ap id>.channels.txt into out_dir (created if
// missing). Throws Error on I/O failure.
void write_report(const ScenarioReport& report, const std::string& out_dir);

}  // namespace afcsim::scenario
