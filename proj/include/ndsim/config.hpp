#pragma once

#include <optional>
#include <vector>

#include "ndsim/time.hpp"

namespace ndsim {

using channel_t = int;

// BLE advertising channels. The single-channel generic protocol uses 0.
inline constexpr channel_t kGenericChannel = 0;
inline const std::vector<channel_t> kBleAdvertisingChannels = {37, 38, 39};

enum class RadioMode { kBle, kGeneric };

// Beacon transmitter parameters. Validated at construction; all code past the
// factories may assume a well-formed config. Immutable by convention.
struct AdvertiserConfig {
  micros_t interval_us = 0;               // static part of the advertising interval
  micros_t random_delay_max_us = 10'000;  // per-event uniform delay bound
  int packet_bytes = 16;
  std::vector<channel_t> channels;        // beacon order inside one event
  micros_t inter_beacon_gap_us = 150;     // spacing between beacons of one event
  RadioMode mode = RadioMode::kBle;

  // 1 Mbit/s PHY: 8 us per byte.
  micros_t beacon_airtime_us() const { return static_cast<micros_t>(packet_bytes) * 8; }
  micros_t max_interval_us() const { return interval_us + random_delay_max_us; }
  double mean_interval_us() const {
    return static_cast<double>(interval_us) + static_cast<double>(random_delay_max_us) / 2.0;
  }
  // Time from event start to the start of the i-th beacon.
  micros_t beacon_offset_us(int i) const {
    return static_cast<micros_t>(i) * (beacon_airtime_us() + inter_beacon_gap_us);
  }

  static AdvertiserConfig ble(micros_t interval_us, micros_t random_delay_max_us = 10'000,
                              int packet_bytes = 16);
  static AdvertiserConfig generic(micros_t interval_us, int packet_bytes = 5,
                                  micros_t random_delay_max_us = 0);
  void validate() const;
};

// Scan window schedule: a window of scan_window_us opens every
// scan_interval_us, hopping through channel_rotation one step per window.
struct ScannerConfig {
  micros_t scan_interval_us = 0;  // period between window starts
  micros_t scan_window_us = 0;    // listen time per period
  std::vector<channel_t> channel_rotation;

  static ScannerConfig ble(micros_t scan_window_us, micros_t scan_interval_us);
  static ScannerConfig generic(micros_t scan_window_us, micros_t scan_interval_us);
  void validate() const;
};

struct DeviceConfig {
  std::optional<AdvertiserConfig> advertiser;
  std::optional<ScannerConfig> scanner;
  micros_t turnaround_us = 150;  // RX<->TX switch time; the radio is deaf while switching

  void validate() const;
};

struct DutyCycles {
  double tx = 0.0;
  double rx = 0.0;
  double total() const { return tx + rx; }
};

// tx = (beacon airtime per mean advertising period) / mean period,
// rx = scan_window / scan_interval. Missing roles contribute zero.
DutyCycles duty_cycles(const DeviceConfig& config);

}  // namespace ndsim
