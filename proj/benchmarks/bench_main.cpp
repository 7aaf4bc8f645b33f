// Times the OpenMP trial dispatch against the serial reference on the two
// hot workloads. Both paths must agree bit-for-bit; this only measures them.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ndsim/crowd.hpp"
#include "ndsim/discovery.hpp"
#include "ndsim/presets.hpp"

using namespace ndsim;
using clock_type = std::chrono::steady_clock;

namespace {

double run_ms(void (*fn)(int), int workers) {
  const auto t0 = clock_type::now();
  fn(workers);
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void sweep_workload(int workers) {
  const PresetCatalog catalog = validate_preset_catalog();
  SweepParams params;
  params.trials = 4000;
  params.horizon_us = seconds(300);
  params.workers = workers;
  // Near-resonant interval: many trials walk the whole horizon.
  const auto r = sweep_latency({millis(1000), 1'018'800}, AdvertiserConfig::ble(millis(100)),
                               catalog.scanner("SCAN_MODE_LOW_POWER"), params, 42);
  (void)r;
}

void crowd_workload(int workers) {
  const PresetCatalog catalog = validate_preset_catalog();
  CrowdScenario scenario;
  scenario.n_devices = 100;
  scenario.config = DeviceConfig{AdvertiserConfig::ble(millis(250)),
                                 catalog.scanner("SCAN_MODE_BALANCED"), 150};
  scenario.deadline_us = seconds(10);
  scenario.trials = 1500;
  const auto e = simulate_crowd(scenario, 42, workers);
  (void)e;
}

void report(const char* name, void (*fn)(int)) {
  const double serial = run_ms(fn, 1);
  const double parallel = run_ms(fn, 0);
  std::printf("%-16s serial %8.1f ms   parallel %8.1f ms   speedup %.2fx\n", name, serial,
              parallel, serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled (serial build)\n");
#endif
  report("sweep-latency", sweep_workload);
  report("crowd", crowd_workload);
  return 0;
}
