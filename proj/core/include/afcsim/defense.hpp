#pragma once

#include <map>
#include <string>

#include "afcsim/geo.hpp"

namespace afcsim::defense {

inline constexpr double kDefaultGroupThresholdM = 50.0;

struct DetectionVerdict {
  std::string detector;
  bool alarm = false;
  double score_m = 0.0;
  double threshold_m = 0.0;
  std::string detail;
};

// Alarm iff the fix lies outside the fence; score is the breach distance.
DetectionVerdict geofence_check(const geo::GeoPoint& fix_center, const geo::Geofence& fence);

// Compares every pairwise reported distance against the deployed one. Only
// APs present in both maps take part. Throws InsufficientGroup below two.
DetectionVerdict group_consistency_check(const std::map<std::string, geo::GeoPoint>& reported,
                                         const std::map<std::string, geo::GeoPoint>& deployed,
                                         double threshold_m = kDefaultGroupThresholdM);

}  // namespace afcsim::defense
