#include "ndsim/config.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ndsim {

namespace {

// BLE spec bounds for the advertising interval.
constexpr micros_t kBleMinIntervalUs = 20'000;
constexpr micros_t kBleMaxIntervalUs = 10'240'000;
constexpr int kBleMinPacketBytes = 16;

bool is_ble_channel(channel_t c) { return c == 37 || c == 38 || c == 39; }

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

AdvertiserConfig AdvertiserConfig::ble(micros_t interval_us, micros_t random_delay_max_us,
                                       int packet_bytes) {
  AdvertiserConfig cfg;
  cfg.interval_us = interval_us;
  cfg.random_delay_max_us = random_delay_max_us;
  cfg.packet_bytes = packet_bytes;
  cfg.channels = kBleAdvertisingChannels;
  cfg.mode = RadioMode::kBle;
  cfg.validate();
  return cfg;
}

AdvertiserConfig AdvertiserConfig::generic(micros_t interval_us, int packet_bytes,
                                           micros_t random_delay_max_us) {
  AdvertiserConfig cfg;
  cfg.interval_us = interval_us;
  cfg.random_delay_max_us = random_delay_max_us;
  cfg.packet_bytes = packet_bytes;
  cfg.channels = {kGenericChannel};
  cfg.mode = RadioMode::kGeneric;
  cfg.validate();
  return cfg;
}

void AdvertiserConfig::validate() const {
  if (channels.empty()) fail("advertiser: channel list must not be empty");
  if (random_delay_max_us < 0) fail("advertiser: random_delay_max_us must be >= 0");
  if (inter_beacon_gap_us < 0) fail("advertiser: inter_beacon_gap_us must be >= 0");
  if (mode == RadioMode::kBle) {
    if (interval_us < kBleMinIntervalUs || interval_us > kBleMaxIntervalUs)
      fail("advertiser: BLE interval_us must lie in [20000, 10240000]");
    if (packet_bytes < kBleMinPacketBytes)
      fail("advertiser: BLE packets are at least 16 bytes");
    for (channel_t c : channels)
      if (!is_ble_channel(c)) fail("advertiser: BLE channels must be a subset of {37,38,39}");
    std::vector<channel_t> sorted = channels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("advertiser: duplicate channel in event");
  } else {
    if (interval_us <= 0) fail("advertiser: interval_us must be positive");
    if (packet_bytes < 1) fail("advertiser: packet_bytes must be >= 1");
  }
  if (beacon_airtime_us() <= 0) fail("advertiser: beacon airtime must be positive");
}

ScannerConfig ScannerConfig::ble(micros_t scan_window_us, micros_t scan_interval_us) {
  ScannerConfig cfg;
  cfg.scan_interval_us = scan_interval_us;
  cfg.scan_window_us = scan_window_us;
  cfg.channel_rotation = kBleAdvertisingChannels;
  cfg.validate();
  return cfg;
}

ScannerConfig ScannerConfig::generic(micros_t scan_window_us, micros_t scan_interval_us) {
  ScannerConfig cfg;
  cfg.scan_interval_us = scan_interval_us;
  cfg.scan_window_us = scan_window_us;
  cfg.channel_rotation = {kGenericChannel};
  cfg.validate();
  return cfg;
}

void ScannerConfig::validate() const {
  if (scan_window_us <= 0) fail("scanner: scan_window_us must be positive");
  if (scan_window_us > scan_interval_us)
    fail("scanner: scan_window_us must not exceed scan_interval_us");
  if (channel_rotation.empty()) fail("scanner: channel rotation must not be empty");
}

void DeviceConfig::validate() const {
  if (!advertiser && !scanner) fail("device: needs an advertiser or a scanner");
  if (turnaround_us < 0) fail("device: turnaround_us must be >= 0");
  if (advertiser) advertiser->validate();
  if (scanner) scanner->validate();
}

DutyCycles duty_cycles(const DeviceConfig& config) {
  config.validate();
  DutyCycles d;
  if (config.advertiser) {
    const auto& a = *config.advertiser;
    const double airtime =
        static_cast<double>(a.beacon_airtime_us()) * static_cast<double>(a.channels.size());
    d.tx = airtime / a.mean_interval_us();
  }
  if (config.scanner) {
    const auto& s = *config.scanner;
    d.rx = static_cast<double>(s.scan_window_us) / static_cast<double>(s.scan_interval_us);
  }
  return d;
}

}  // namespace ndsim
