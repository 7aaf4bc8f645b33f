#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ndsim/config.hpp"
#include "ndsim/rng.hpp"
#include "ndsim/time.hpp"

namespace ndsim {

struct BeaconEvent {
  micros_t start_us = 0;
  micros_t duration_us = 0;
  channel_t channel = 0;
  int device_id = 0;

  micros_t end_us() const { return start_us + duration_us; }
  bool operator==(const BeaconEvent&) const = default;
};

struct ScanWindow {
  micros_t start_us = 0;
  micros_t duration_us = 0;
  channel_t channel = 0;
  int device_id = 0;

  micros_t end_us() const { return start_us + duration_us; }
  bool operator==(const ScanWindow&) const = default;
};

// Incremental source of advertising events. The first event fires at `phase`;
// each following event is one interval plus a fresh uniform delay later. Gap
// draws happen lazily, one per advance(), so extending a horizon never
// perturbs the earlier part of the timeline.
class AdvEventStream {
 public:
  AdvEventStream(const AdvertiserConfig& config, micros_t phase_us, std::uint64_t seed)
      : config_(&config), event_us_(phase_us), rng_(seed) {}

  micros_t event_start_us() const { return event_us_; }
  std::int64_t event_index() const { return index_; }

  void advance() {
    event_us_ += config_->interval_us + rng_.uniform_rounded_us(config_->random_delay_max_us);
    ++index_;
  }

  int beacons_per_event() const { return static_cast<int>(config_->channels.size()); }

  BeaconEvent beacon(int i, int device_id = 0) const {
    return {event_us_ + config_->beacon_offset_us(i), config_->beacon_airtime_us(),
            config_->channels[static_cast<std::size_t>(i)], device_id};
  }

 private:
  const AdvertiserConfig* config_;
  micros_t event_us_;
  SplitMix64 rng_;
  std::int64_t index_ = 0;
};

// All beacons that lie entirely inside [0, horizon). Deterministic for a
// given seed.
std::vector<BeaconEvent> gen_beacons(const AdvertiserConfig& config, micros_t phase_us,
                                     micros_t horizon_us, std::uint64_t seed, int device_id = 0);

// Scan windows fully inside [0, horizon); window k starts at
// phase + k * scan_interval and listens on channel_rotation[k mod size].
std::vector<ScanWindow> gen_scan_windows(const ScannerConfig& config, micros_t phase_us,
                                         micros_t horizon_us, int device_id = 0);

// Single-channel periodic-interval protocol tuned for the given worst-case
// latency target: equal tx/rx duty, interval = airtime/duty, scan window one
// interval plus one beacon, no random delay. Throws Infeasible when the
// target cannot be met with duty <= 1.
DeviceConfig gen_optimal_pi_schedule(micros_t target_latency_us, micros_t beacon_airtime_us);

// Periodic-interval schedule with the tx duty divided by k and the rx duty
// multiplied by k, keeping the worst-case latency: longer interval, wider
// window. Input must be a single-channel schedule without random delay.
DeviceConfig rescale_pi_schedule(const DeviceConfig& pi_device, double k);

// Merged timeline dump: device_id,kind,start_us,duration_us,channel.
void write_timeline_csv(std::ostream& os, const std::vector<BeaconEvent>& beacons,
                        const std::vector<ScanWindow>& windows);

}  // namespace ndsim
