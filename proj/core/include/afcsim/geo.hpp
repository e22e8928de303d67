#pragma once

#include "afcsim/time_util.hpp"

namespace afcsim::geo {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double height_m = 0.0;  // above ground level

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

// GPS uncertainty ellipse as reported by the AP's receiver.
struct LocationEllipse {
  GeoPoint center;
  double major_axis_m = 0.0;
  double minor_axis_m = 0.0;
  double orientation_deg = 0.0;  // clockwise from true north, [0, 180)
  UtcSeconds gps_time = 0;

  friend bool operator==(const LocationEllipse&, const LocationEllipse&) = default;
};

struct Geofence {
  GeoPoint center;
  double radius_m = 0.0;
};

bool is_valid(const GeoPoint& p);
bool is_valid(const LocationEllipse& e);
bool is_valid(const Geofence& f);

// Great-circle distance on a sphere of radius kEarthRadiusM.
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

// Initial great-circle bearing from a to b, degrees clockwise from north in
// [0, 360). Throws CoincidentPoints when a and b coincide.
double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b);

// Point reached by travelling distance_m along the great circle leaving
// origin at bearing_deg. Height is carried over from origin.
GeoPoint destination_point(const GeoPoint& origin, double bearing_deg, double distance_m);

// Inclusive: a point exactly on the boundary is inside.
bool within_geofence(const GeoPoint& p, const Geofence& fence);

// Smallest absolute difference between two bearings, in [0, 180].
double angular_difference_deg(double a_deg, double b_deg);

}  // namespace afcsim::geo
