#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afcsim/afc_server.hpp"
#include "afcsim/scenario.hpp"

namespace afcsim::scenario {

// What one AP is actually radiating.
struct TransmitterInput {
  std::string ap_id;
  geo::GeoPoint true_position;
  ap::Phase phase = ap::Phase::kNoFix;
  std::optional<afc::ChannelGrant> operating;  // channel and EIRP in use
};

struct HarmRow {
  std::string ap_id;
  std::string link_id;
  spectrum::ChannelId channel;
  double eirp_dbm = 0.0;
  double distance_m = 0.0;
  double i_over_n_db = 0.0;
  bool violated = false;
};

struct HarmMetrics {
  std::map<std::string, double> worst_i_over_n_db;  // by link id
  int violation_count = 0;
};

struct HarmAssessment {
  std::vector<HarmRow> rows;
  HarmMetrics metrics;
};

// Evaluates interference at every co-channel FS link from each AUTHORIZED
// transmitter, using its true position.
HarmAssessment assess_harm(const std::vector<TransmitterInput>& inputs, const World& world);

}  // namespace afcsim::scenario
