#pragma once

#include <cstdint>
#include <vector>

#include "ndsim/config.hpp"
#include "ndsim/time.hpp"

namespace ndsim {

// n_devices identical devices in one collision domain. Device 0 is the
// watched advertiser, device 1 the watched scanner; the rest only interfere.
struct CrowdScenario {
  int n_devices = 100;
  DeviceConfig config;             // shared by every device
  micros_t deadline_us = seconds(10);
  int trials = 10'000;

  void validate() const;
};

struct SuccessEstimate {
  double probability = 0.0;
  double wilson_low = 0.0;   // 95% Wilson interval
  double wilson_high = 0.0;
  int successes = 0;
  int trials = 0;
};

// 95% Wilson score interval for a binomial proportion.
SuccessEstimate wilson_estimate(int successes, int trials);

// Probability that the watched pair discovers each other before the deadline.
// A trial succeeds when some beacon of device 0 (i) fits entirely inside a
// matching scan window of device 1, (ii) does not overlap any other device's
// beacon on the same channel, and (iii) misses the scanner's own transmission
// holes. All phases are drawn independently per trial.
SuccessEstimate simulate_crowd(const CrowdScenario& scenario, std::uint64_t seed,
                               int workers = 0);

struct CrowdSweepPoint {
  micros_t interval_us = 0;
  SuccessEstimate estimate;
};

// simulate_crowd over a list of static advertising intervals, with every
// device switched to that interval.
std::vector<CrowdSweepPoint> crowd_sweep(const ScannerConfig& scanner,
                                         const AdvertiserConfig& advertiser_proto,
                                         const std::vector<micros_t>& intervals_us, int n_devices,
                                         micros_t deadline_us, int trials, std::uint64_t seed,
                                         int workers = 0);

// Crowd run for the single-channel periodic-interval protocol (all devices
// share the given config, typically from gen_optimal_pi_schedule).
SuccessEstimate generic_crowd(int n_devices, const DeviceConfig& pi_config, micros_t deadline_us,
                              int trials, std::uint64_t seed, int workers = 0);

}  // namespace ndsim
