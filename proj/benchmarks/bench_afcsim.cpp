#include <benchmark/benchmark.h>

#include <string>

#include "afcsim/afc_server.hpp"
#include "afcsim/geo.hpp"
#include "afcsim/simulation.hpp"
#include "afcsim/wire.hpp"

namespace {

using namespace afcsim;

const std::string kSource = AFCSIM_SOURCE_DIR;

void BM_Haversine(benchmark::State& state) {
  geo::GeoPoint a{40.7934, -77.86};
  const geo::GeoPoint b{30.086965, -101.103761};
  for (auto _ : state) {
    benchmark::DoNotOptimize(geo::haversine_distance(a, b));
    a.lon_deg += 1e-9;
  }
}
BENCHMARK(BM_Haversine);

void BM_ComputeAvailability(benchmark::State& state) {
  const auto db = wire::database_from_json(wire::load_document(kSource + "/data/incumbents.json"));
  geo::LocationEllipse loc;
  loc.center = {40.75, -77.9, 6.0};
  loc.major_axis_m = 20.0;
  loc.minor_axis_m = 10.0;
  const std::vector<int> bws{20, 40, 80, 160, 320};
  for (auto _ : state) {
    benchmark::DoNotOptimize(afc::compute_availability(loc, bws, db, {}, {}));
  }
}
BENCHMARK(BM_ComputeAvailability);

void BM_RunScenarioA1(benchmark::State& state) {
  const auto s = scenario::load_scenario_file(kSource + "/scenarios/a1_interference.json");
  for (auto _ : state) benchmark::DoNotOptimize(scenario::run_scenario(s));
}
BENCHMARK(BM_RunScenarioA1);

}  // namespace

BENCHMARK_MAIN();
