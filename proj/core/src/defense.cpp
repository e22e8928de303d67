#include "afcsim/defense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "afcsim/errors.hpp"

namespace afcsim::defense {

DetectionVerdict geofence_check(const geo::GeoPoint& fix_center, const geo::Geofence& fence) {
  const double d = geo::haversine_distance(fix_center, fence.center);
  DetectionVerdict v;
  v.detector = "geofence";
  v.alarm = !geo::within_geofence(fix_center, fence);
  v.score_m = std::max(0.0, d - fence.radius_m);
  v.threshold_m = 0.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "fix %.1f m from registered center (radius %.1f m)", d,
                fence.radius_m);
  v.detail = buf;
  return v;
}

DetectionVerdict group_consistency_check(const std::map<std::string, geo::GeoPoint>& reported,
                                         const std::map<std::string, geo::GeoPoint>& deployed,
                                         double threshold_m) {
  std::vector<std::pair<const geo::GeoPoint*, const geo::GeoPoint*>> members;
  std::vector<const std::string*> ids;
  for (const auto& [id, pos] : reported) {
    if (auto it = deployed.find(id); it != deployed.end()) {
      members.emplace_back(&pos, &it->second);
      ids.push_back(&id);
    }
  }
  if (members.size() < 2) throw InsufficientGroup(members.size());

  double worst = 0.0;
  std::size_t wi = 0, wj = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const double delta =
          std::abs(geo::haversine_distance(*members[i].first, *members[j].first) -
                   geo::haversine_distance(*members[i].second, *members[j].second));
      if (delta > worst) {
        worst = delta;
        wi = i;
        wj = j;
      }
    }
  }

  DetectionVerdict v;
  v.detector = "group_consistency";
  v.score_m = worst;
  v.threshold_m = threshold_m;
  v.alarm = worst > threshold_m;
  char buf[160];
  std::snprintf(buf, sizeof buf, "max pairwise discrepancy %.1f m between %s and %s over %zu APs",
                worst, ids[wi]->c_str(), ids[wj]->c_str(), members.size());
  v.detail = buf;
  return v;
}

}  // namespace afcsim::defense
