#include "afcsim/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afcsim/errors.hpp"

namespace afcsim::geo {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Below this separation a bearing is meaningless.
constexpr double kCoincidentM = 1e-6;

double normalize_360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  return r >= 360.0 ? 0.0 : r;
}

double normalize_lon(double deg) {
  double r = std::fmod(deg + 180.0, 360.0);
  if (r < 0.0) r += 360.0;
  return r - 180.0;
}

}  // namespace

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat_deg) && std::isfinite(p.lon_deg) && std::isfinite(p.height_m) &&
         p.lat_deg >= -90.0 && p.lat_deg <= 90.0 && p.lon_deg >= -180.0 && p.lon_deg <= 180.0 &&
         p.height_m >= 0.0;
}

bool is_valid(const LocationEllipse& e) {
  return is_valid(e.center) && std::isfinite(e.major_axis_m) && std::isfinite(e.minor_axis_m) &&
         e.minor_axis_m >= 0.0 && e.minor_axis_m <= e.major_axis_m &&
         std::isfinite(e.orientation_deg) && e.orientation_deg >= 0.0 && e.orientation_deg < 180.0;
}

bool is_valid(const Geofence& f) {
  return is_valid(f.center) && std::isfinite(f.radius_m) && f.radius_m > 0.0;
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat_deg * kDegToRad;
  const double phi2 = b.lat_deg * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = (b.lon_deg - a.lon_deg) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b) {
  if (haversine_distance(a, b) < kCoincidentM) throw CoincidentPoints();
  const double phi1 = a.lat_deg * kDegToRad;
  const double phi2 = b.lat_deg * kDegToRad;
  const double dlambda = (b.lon_deg - a.lon_deg) * kDegToRad;
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x =
      std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  return normalize_360(std::atan2(y, x) * kRadToDeg);
}

GeoPoint destination_point(const GeoPoint& origin, double bearing_deg, double distance_m) {
  const double delta = distance_m / kEarthRadiusM;
  const double theta = bearing_deg * kDegToRad;
  const double phi1 = origin.lat_deg * kDegToRad;
  const double lambda1 = origin.lon_deg * kDegToRad;

  const double sin_phi2 =
      std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta);
  const double phi2 = std::asin(std::clamp(sin_phi2, -1.0, 1.0));
  const double y = std::sin(theta) * std::sin(delta) * std::cos(phi1);
  const double x = std::cos(delta) - std::sin(phi1) * sin_phi2;
  const double lambda2 = lambda1 + std::atan2(y, x);

  return GeoPoint{phi2 * kRadToDeg, normalize_lon(lambda2 * kRadToDeg), origin.height_m};
}

bool within_geofence(const GeoPoint& p, const Geofence& fence) {
  return haversine_distance(p, fence.center) <= fence.radius_m;
}

double angular_difference_deg(double a_deg, double b_deg) {
  const double d = normalize_360(a_deg - b_deg);
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace afcsim::geo
