#include "ndsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ndsim/bounds.hpp"

namespace ndsim {

std::vector<BeaconEvent> gen_beacons(const AdvertiserConfig& config, micros_t phase_us,
                                     micros_t horizon_us, std::uint64_t seed, int device_id) {
  config.validate();
  if (horizon_us <= 0) throw std::invalid_argument("horizon must be positive");
  std::vector<BeaconEvent> out;
  AdvEventStream stream(config, phase_us, seed);
  while (stream.event_start_us() < horizon_us) {
    for (int i = 0; i < stream.beacons_per_event(); ++i) {
      BeaconEvent b = stream.beacon(i, device_id);
      if (b.end_us() <= horizon_us) out.push_back(b);
    }
    stream.advance();
  }
  return out;
}

std::vector<ScanWindow> gen_scan_windows(const ScannerConfig& config, micros_t phase_us,
                                         micros_t horizon_us, int device_id) {
  config.validate();
  if (horizon_us <= 0) throw std::invalid_argument("horizon must be positive");
  std::vector<ScanWindow> out;
  const std::size_t rotation = config.channel_rotation.size();
  for (std::int64_t k = 0;; ++k) {
    const micros_t start = phase_us + k * config.scan_interval_us;
    if (start + config.scan_window_us > horizon_us) break;
    out.push_back({start, config.scan_window_us,
                   config.channel_rotation[static_cast<std::size_t>(k) % rotation], device_id});
  }
  return out;
}

DeviceConfig gen_optimal_pi_schedule(micros_t target_latency_us, micros_t beacon_airtime_us) {
  if (beacon_airtime_us <= 0 || beacon_airtime_us % 8 != 0)
    throw std::invalid_argument("beacon airtime must be a positive multiple of 8 us");
  if (target_latency_us <= beacon_airtime_us)
    throw Infeasible("target latency must exceed the beacon airtime");
  const double duty = solve_equal_duty(target_latency_us, beacon_airtime_us);

  const micros_t interval =
      static_cast<micros_t>(std::llround(static_cast<double>(beacon_airtime_us) / duty));
  const micros_t window = interval + beacon_airtime_us;
  const micros_t scan_interval =
      static_cast<micros_t>(std::llround(static_cast<double>(window) / duty));

  DeviceConfig device;
  device.advertiser = AdvertiserConfig::generic(
      interval, static_cast<int>(beacon_airtime_us / 8), /*random_delay_max_us=*/0);
  device.scanner = ScannerConfig::generic(window, scan_interval);
  device.validate();
  return device;
}

DeviceConfig rescale_pi_schedule(const DeviceConfig& pi_device, double k) {
  pi_device.validate();
  if (!pi_device.advertiser || !pi_device.scanner)
    throw std::invalid_argument("rescale_pi_schedule: device must advertise and scan");
  const AdvertiserConfig& adv = *pi_device.advertiser;
  if (adv.channels.size() != 1 || adv.random_delay_max_us != 0)
    throw std::invalid_argument("rescale_pi_schedule: expects a single-channel schedule without random delay");

  const DutyCycles duty = duty_cycles(pi_device);
  const EnergyBudget rescaled = rescale_tradeoff({duty.tx, duty.rx}, k);

  const micros_t airtime = adv.beacon_airtime_us();
  const micros_t interval =
      static_cast<micros_t>(std::llround(static_cast<double>(airtime) / rescaled.tx));
  const micros_t window = interval + airtime;
  const micros_t scan_interval =
      static_cast<micros_t>(std::llround(static_cast<double>(window) / rescaled.rx));

  DeviceConfig out;
  out.advertiser = AdvertiserConfig::generic(interval, adv.packet_bytes, 0);
  out.scanner = ScannerConfig::generic(window, scan_interval);
  out.turnaround_us = pi_device.turnaround_us;
  out.validate();
  return out;
}

void write_timeline_csv(std::ostream& os, const std::vector<BeaconEvent>& beacons,
                        const std::vector<ScanWindow>& windows) {
  struct Row {
    micros_t start;
    micros_t duration;
    channel_t channel;
    int device_id;
    const char* kind;
  };
  std::vector<Row> rows;
  rows.reserve(beacons.size() + windows.size());
  for (const auto& b : beacons) rows.push_back({b.start_us, b.duration_us, b.channel, b.device_id, "beacon"});
  for (const auto& w : windows) rows.push_back({w.start_us, w.duration_us, w.channel, w.device_id, "scan"});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.start < b.start; });
  os << "device_id,kind,start_us,duration_us,channel\n";
  for (const auto& r : rows)
    os << r.device_id << ',' << r.kind << ',' << r.start << ',' << r.duration << ',' << r.channel
       << '\n';
}

}  // namespace ndsim
