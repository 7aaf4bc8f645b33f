#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ndsim/config.hpp"
#include "ndsim/schedule.hpp"
#include "ndsim/time.hpp"

namespace ndsim {

// One pairwise discovery trial. t0 is the first beacon transmitted after the
// devices are in range; reception completes at the end of the first beacon
// that fits entirely inside a matching scan window.
//   latency_from_first_beacon: start of the received beacon minus t0 (the
//     beacon-to-beacon latency, the primary reported metric).
//   latency_from_t0: end of the received beacon minus t0.
// Both empty when nothing was received before the horizon (censored trial).
struct TrialOutcome {
  std::optional<micros_t> latency_from_first_beacon;
  std::optional<micros_t> latency_from_t0;
  micros_t phase_offset_us = 0;

  bool censored() const { return !latency_from_first_beacon.has_value(); }
};

struct PairOptions {
  // Keep only advertising events with index % k == 0; 1 keeps everything.
  int keep_every_kth_event = 1;
  // Channels the scanner actually listens on; empty = the full rotation.
  // Windows on removed channels stay scheduled but receive nothing.
  std::vector<channel_t> listen_channels;
};

// phase is the offset of the first beacon into the scanner's scan interval
// (the scanner's windows start at 0). The scanning device may itself
// advertise; its own transmissions plus the turnaround on each side punch
// holes into its reception windows.
TrialOutcome simulate_pair(const DeviceConfig& advertiser_device,
                           const DeviceConfig& scanner_device, micros_t phase_us,
                           micros_t horizon_us, std::uint64_t seed,
                           const PairOptions& options = {});

struct SweepResult {
  micros_t interval_us = 0;
  std::optional<micros_t> max_latency_us;  // over non-censored trials
  double mean_latency_us = 0.0;            // over non-censored trials; NaN when all censored
  int censored = 0;
  int trials = 0;
};

struct SweepParams {
  int trials = 1000;
  micros_t horizon_us = seconds(300);
  int workers = 0;  // 0 = all threads, 1 = serial
  int keep_every_kth_event = 1;
};

// Latency sweep over a grid of static advertising intervals. Per grid point,
// `trials` independent trials with a fresh uniform phase in [0, scan_interval)
// and fresh delay streams. Deterministic in (seed, grid value, trial index);
// the statistics are order-independent merges, so any worker count gives
// identical results.
std::vector<SweepResult> sweep_latency(const std::vector<micros_t>& interval_grid_us,
                                       const AdvertiserConfig& advertiser_proto,
                                       const ScannerConfig& scanner, const SweepParams& params,
                                       std::uint64_t seed);

// Sweep with every advertising event dropped except each k-th one (thinned
// beacon stream, e.g. k = 2 doubles the effective interval).
std::vector<SweepResult> degraded_beacon_drop(const std::vector<micros_t>& interval_grid_us,
                                              const AdvertiserConfig& advertiser_proto,
                                              const ScannerConfig& scanner, int keep_every_kth,
                                              SweepParams params, std::uint64_t seed);

}  // namespace ndsim
