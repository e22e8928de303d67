#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "afcsim/errors.hpp"
#include "afcsim/geo.hpp"
#include "oracles.hpp"

namespace afcsim::geo {
namespace {

const GeoPoint kTexasSpoofed{30.086965, -101.103761};
const GeoPoint kTexasComputed{30.087050, -101.103714};

TEST(Haversine, IdentityIsZero) {
  EXPECT_DOUBLE_EQ(haversine_distance({0, 0}, {0, 0}), 0.0);
}

TEST(Haversine, OneDegreeOfLongitudeOnTheEquator) {
  // pi / 180 * 6371000
  EXPECT_NEAR(haversine_distance({0, 0}, {0, 1}), 111194.93, 0.01);
}

TEST(Haversine, SpoofedVersusComputedTexasFix) {
  EXPECT_NEAR(haversine_distance(kTexasSpoofed, kTexasComputed), 10.4776, 1e-3);
}

TEST(Haversine, PennsylvaniaToTexas) {
  EXPECT_NEAR(haversine_distance({40.7934, -77.86}, kTexasSpoofed), 2407922.0, 1.0);
}

TEST(Haversine, SymmetricAndIgnoresHeight) {
  const GeoPoint a{40.1, -77.2, 0.0};
  const GeoPoint b{40.3, -77.9, 120.0};
  EXPECT_DOUBLE_EQ(haversine_distance(a, b), haversine_distance(b, a));
  EXPECT_DOUBLE_EQ(haversine_distance(a, b), haversine_distance(a, {40.3, -77.9, 0.0}));
}

TEST(Haversine, AgreesWithVectorOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-80, 80), lon(-180, 180), step(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const GeoPoint a{lat(rng), lon(rng)};
    const GeoPoint b{a.lat_deg + step(rng), a.lon_deg + step(rng)};
    EXPECT_NEAR(haversine_distance(a, b),
                oracle::great_circle_m(a.lat_deg, a.lon_deg, b.lat_deg, b.lon_deg), 1e-3);
  }
}

TEST(Bearing, CardinalDirections) {
  EXPECT_NEAR(initial_bearing_deg({0, 0}, {1, 0}), 0.0, 1e-9);
  EXPECT_NEAR(initial_bearing_deg({0, 0}, {0, 1}), 90.0, 1e-9);
  EXPECT_NEAR(initial_bearing_deg({0, 0}, {-1, 0}), 180.0, 1e-9);
  EXPECT_NEAR(initial_bearing_deg({0, 0}, {0, -1}), 270.0, 1e-9);
}

TEST(Bearing, DiagonalMatchesFrozenAndOracle) {
  const double b = initial_bearing_deg({10, 10}, {10.5, 10.5});
  EXPECT_NEAR(b, 44.4949, 1e-3);
  EXPECT_NEAR(b, oracle::initial_bearing_deg(10, 10, 10.5, 10.5), 1e-6);
}

TEST(Bearing, RandomPairsAgreeWithOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lat(-70, 70), lon(-180, 180), step(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const GeoPoint a{lat(rng), lon(rng)};
    const GeoPoint b{a.lat_deg + step(rng), a.lon_deg + step(rng)};
    const double expected = oracle::initial_bearing_deg(a.lat_deg, a.lon_deg, b.lat_deg, b.lon_deg);
    EXPECT_NEAR(angular_difference_deg(initial_bearing_deg(a, b), expected), 0.0, 1e-6);
  }
}

TEST(Bearing, CoincidentPointsThrow) {
  EXPECT_THROW(initial_bearing_deg({40, -77}, {40, -77}), CoincidentPoints);
}

TEST(Destination, ZeroDisplacementIsOrigin) {
  const GeoPoint p = destination_point({0, 0}, 0.0, 0.0);
  EXPECT_NEAR(p.lat_deg, 0.0, 1e-12);
  EXPECT_NEAR(p.lon_deg, 0.0, 1e-12);
}

TEST(Destination, InverseOfEquatorDegree) {
  const GeoPoint p = destination_point({0, 0}, 90.0, 111194.93);
  EXPECT_NEAR(p.lat_deg, 0.0, 1e-5);
  EXPECT_NEAR(p.lon_deg, 1.0, 1e-5);
}

TEST(Destination, RoundTripsThroughHaversineAndBearing) {
  const GeoPoint origin{30, -101, 6.0};
  const GeoPoint p = destination_point(origin, 45.0, 500.0);
  EXPECT_NEAR(haversine_distance(origin, p), 500.0, 0.1);
  EXPECT_NEAR(initial_bearing_deg(origin, p), 45.0, 1e-3);
  EXPECT_DOUBLE_EQ(p.height_m, 6.0);
}

TEST(Geofence, CenterIsInside) {
  const Geofence f{{40.71, -77.86}, 100.0};
  EXPECT_TRUE(within_geofence(f.center, f));
}

TEST(Geofence, FarPointIsOutside) {
  const Geofence f{{40.71, -77.86}, 100.0};
  EXPECT_FALSE(within_geofence(destination_point(f.center, 90.0, 500.0), f));
}

TEST(Geofence, BoundaryIsInclusive) {
  const Geofence f{{40.71, -77.86}, 100.0};
  const GeoPoint edge = destination_point(f.center, 90.0, 100.0);
  Geofence exact = f;
  exact.radius_m = haversine_distance(f.center, edge);
  EXPECT_TRUE(within_geofence(edge, exact));
  EXPECT_TRUE(within_geofence(destination_point(f.center, 200.0, 99.99), f));
}

TEST(Validity, RangesAreEnforced) {
  EXPECT_TRUE(is_valid(GeoPoint{90, 180}));
  EXPECT_FALSE(is_valid(GeoPoint{90.0001, 0}));
  EXPECT_FALSE(is_valid(GeoPoint{0, -180.0001}));
  EXPECT_FALSE(is_valid(GeoPoint{0, 0, -1.0}));
  EXPECT_FALSE(is_valid(GeoPoint{std::nan(""), 0}));

  LocationEllipse e{{40, -77}, 10.0, 5.0, 30.0, 0};
  EXPECT_TRUE(is_valid(e));
  e.minor_axis_m = 11.0;
  EXPECT_FALSE(is_valid(e));
  e.minor_axis_m = 5.0;
  e.orientation_deg = 180.0;
  EXPECT_FALSE(is_valid(e));

  EXPECT_FALSE(is_valid(Geofence{{40, -77}, 0.0}));
  EXPECT_TRUE(is_valid(Geofence{{40, -77}, 1.0}));
}

TEST(AngularDifference, WrapsAroundNorth) {
  EXPECT_DOUBLE_EQ(angular_difference_deg(359.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(angular_difference_deg(0.0, 180.0), 180.0);
  EXPECT_DOUBLE_EQ(angular_difference_deg(90.0, 45.0), 45.0);
}

}  // namespace
}  // namespace afcsim::geo
