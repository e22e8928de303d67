#include <gtest/gtest.h>

#include "afcsim/defense.hpp"
#include "afcsim/errors.hpp"

namespace afcsim::defense {
namespace {

const geo::GeoPoint kDeployed{40.7934, -77.86};
const geo::GeoPoint kTexas{30.086965, -101.103761};

TEST(Geofence, CenterIsQuiet) {
  const auto v = geofence_check(kDeployed, {kDeployed, 100.0});
  EXPECT_FALSE(v.alarm);
  EXPECT_DOUBLE_EQ(v.score_m, 0.0);
  EXPECT_EQ(v.detector, "geofence");
  EXPECT_DOUBLE_EQ(v.threshold_m, 0.0);
}

TEST(Geofence, SpoofedToTexasAlarmsWithBreachDistance) {
  const auto v = geofence_check(kTexas, {kDeployed, 100.0});
  EXPECT_TRUE(v.alarm);
  EXPECT_NEAR(v.score_m, 2407922.0 - 100.0, 1.0);
}

TEST(Geofence, BoundaryIsQuiet) {
  const geo::GeoPoint edge = geo::destination_point(kDeployed, 45.0, 100.0);
  const double r = geo::haversine_distance(kDeployed, edge);
  EXPECT_FALSE(geofence_check(edge, {kDeployed, r}).alarm);
  EXPECT_TRUE(geofence_check(geo::destination_point(kDeployed, 45.0, 101.0), {kDeployed, 100.0})
                  .alarm);
}

TEST(Group, CollapsedReportsAlarm) {
  const geo::GeoPoint b = geo::destination_point(kDeployed, 90.0, 500.0);
  const std::map<std::string, geo::GeoPoint> deployed{{"a", kDeployed}, {"b", b}};
  const std::map<std::string, geo::GeoPoint> reported{
      {"a", kTexas}, {"b", geo::destination_point(kTexas, 10.0, 4.0)}};
  const auto v = group_consistency_check(reported, deployed);
  EXPECT_TRUE(v.alarm);
  EXPECT_NEAR(v.score_m, 496.0, 1.5);
  EXPECT_EQ(v.detector, "group_consistency");
  EXPECT_DOUBLE_EQ(v.threshold_m, 50.0);
}

TEST(Group, HonestReportsAreQuiet) {
  const geo::GeoPoint b = geo::destination_point(kDeployed, 90.0, 500.0);
  const std::map<std::string, geo::GeoPoint> deployed{{"a", kDeployed}, {"b", b}};
  const std::map<std::string, geo::GeoPoint> reported{
      {"a", geo::destination_point(kDeployed, 0.0, 7.0)},
      {"b", geo::destination_point(b, 180.0, 7.0)}};
  const auto v = group_consistency_check(reported, deployed);
  EXPECT_FALSE(v.alarm);
  EXPECT_LT(v.score_m, 1.0);
}

TEST(Group, WorstPairDecides) {
  const std::map<std::string, geo::GeoPoint> deployed{
      {"a", kDeployed},
      {"b", geo::destination_point(kDeployed, 90.0, 300.0)},
      {"c", geo::destination_point(kDeployed, 0.0, 300.0)}};
  auto reported = deployed;
  reported["c"] = geo::destination_point(kDeployed, 0.0, 380.0);
  const auto v = group_consistency_check(reported, deployed, 50.0);
  EXPECT_TRUE(v.alarm);
  EXPECT_NEAR(v.score_m, 80.0, 1.0);
}

TEST(Group, NeedsTwoSharedMembers) {
  const std::map<std::string, geo::GeoPoint> one{{"a", kDeployed}};
  EXPECT_THROW(group_consistency_check(one, one), InsufficientGroup);
  const std::map<std::string, geo::GeoPoint> other{{"a", kDeployed}, {"z", kTexas}};
  const std::map<std::string, geo::GeoPoint> deployed{{"a", kDeployed}, {"b", kTexas}};
  EXPECT_THROW(group_consistency_check(other, deployed), InsufficientGroup);
}

}  // namespace
}  // namespace afcsim::defense
