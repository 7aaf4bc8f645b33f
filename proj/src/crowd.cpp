#include "ndsim/crowd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "ndsim/exec.hpp"
#include "ndsim/rng.hpp"
#include "ndsim/schedule.hpp"
#include "trial_internal.hpp"

namespace ndsim {

namespace {

// Interferer beacon start times, one sorted vector per channel index of the
// advertiser's channel list.
struct InterferenceField {
  std::vector<std::vector<micros_t>> per_channel;
  const std::vector<channel_t>* channels;

  bool collides(micros_t start_us, micros_t airtime_us, channel_t channel) const {
    const auto it = std::find(channels->begin(), channels->end(), channel);
    if (it == channels->end()) return false;
    const auto& starts = per_channel[static_cast<std::size_t>(it - channels->begin())];
    // Same airtime on both sides: overlap iff |other - start| < airtime.
    auto lo = std::lower_bound(starts.begin(), starts.end(), start_us - airtime_us + 1);
    return lo != starts.end() && *lo < start_us + airtime_us;
  }
};

bool crowd_trial(const CrowdScenario& scenario, std::uint64_t trial_seed) {
  const AdvertiserConfig& adv = *scenario.config.advertiser;
  const ScannerConfig& scan = *scenario.config.scanner;
  const micros_t deadline = scenario.deadline_us;
  const micros_t airtime = adv.beacon_airtime_us();

  // All schedules are free-running; t = 0 is the moment the watched pair
  // comes into range. The scanner's window grid gets a uniform phase, the
  // watched advertiser transmits its first in-range beacon within one
  // advertising interval. Interferers and the scanner's own transmitter were
  // already running, so their streams begin one full interval before t = 0
  // to keep the collision field stationary across the trial start.
  SplitMix64 phase_rng(trial_seed);
  const micros_t window_phase = phase_rng.below(scan.scan_interval_us);
  const micros_t target_phase = phase_rng.below(adv.max_interval_us());

  const detail::WindowSchedule windows{scan.scan_interval_us, scan.scan_window_us,
                                       &scan.channel_rotation, window_phase};

  // Scanner's own transmissions (device 1) block its reception.
  const micros_t own_phase = phase_rng.below(adv.max_interval_us()) - adv.max_interval_us();
  detail::BlockingTx blocker(adv, scenario.config.turnaround_us, own_phase,
                             derive_seed(trial_seed, detail::kSaltOwnTxStream, 0));

  // Devices 2..n-1 fill the channel; collect their beacons over the deadline.
  InterferenceField field;
  field.channels = &adv.channels;
  field.per_channel.resize(adv.channels.size());
  for (int d = 2; d < scenario.n_devices; ++d) {
    const std::uint64_t dev_seed =
        derive_seed(trial_seed, detail::kSaltInterferer, static_cast<std::uint64_t>(d));
    SplitMix64 dev_phase_rng(dev_seed);
    AdvEventStream stream(adv, dev_phase_rng.below(adv.max_interval_us()) - adv.max_interval_us(),
                          mix64(dev_seed));
    while (stream.event_start_us() < deadline) {
      for (int i = 0; i < stream.beacons_per_event(); ++i) {
        const BeaconEvent b = stream.beacon(i);
        if (b.start_us < deadline)
          field.per_channel[static_cast<std::size_t>(i)].push_back(b.start_us);
      }
      stream.advance();
    }
  }
  for (auto& starts : field.per_channel) std::sort(starts.begin(), starts.end());

  AdvEventStream target(adv, target_phase, derive_seed(trial_seed, detail::kSaltAdvStream, 0));
  while (target.event_start_us() < deadline) {
    for (int i = 0; i < target.beacons_per_event(); ++i) {
      const BeaconEvent b = target.beacon(i);
      if (b.end_us() > deadline) continue;
      if (!windows.receives(b.start_us, b.duration_us, b.channel)) continue;
      if (field.collides(b.start_us, airtime, b.channel)) continue;
      if (blocker.blocks(b.start_us, b.end_us())) continue;
      return true;
    }
    target.advance();
  }
  return false;
}

}  // namespace

void CrowdScenario::validate() const {
  if (n_devices < 2) throw std::invalid_argument("crowd: need at least the watched pair");
  if (deadline_us <= 0) throw std::invalid_argument("crowd: deadline must be positive");
  if (trials <= 0) throw std::invalid_argument("crowd: trials must be positive");
  config.validate();
  if (!config.advertiser || !config.scanner)
    throw std::invalid_argument("crowd: the shared config must advertise and scan");
}

SuccessEstimate wilson_estimate(int successes, int trials) {
  if (trials <= 0) throw std::invalid_argument("wilson_estimate: trials must be positive");
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = trials;
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  SuccessEstimate e;
  e.probability = p;
  e.wilson_low = std::max(0.0, center - half);
  e.wilson_high = std::min(1.0, center + half);
  e.successes = successes;
  e.trials = trials;
  return e;
}

SuccessEstimate simulate_crowd(const CrowdScenario& scenario, std::uint64_t seed, int workers) {
  scenario.validate();
  std::vector<unsigned char> success(static_cast<std::size_t>(scenario.trials), 0);
  run_trials(scenario.trials, workers, [&](std::int64_t t) {
    const std::uint64_t trial_seed = derive_seed(seed, 0xC0, static_cast<std::uint64_t>(t));
    success[static_cast<std::size_t>(t)] = crowd_trial(scenario, trial_seed) ? 1 : 0;
  });
  int successes = 0;
  for (unsigned char s : success) successes += s;
  return wilson_estimate(successes, scenario.trials);
}

std::vector<CrowdSweepPoint> crowd_sweep(const ScannerConfig& scanner,
                                         const AdvertiserConfig& advertiser_proto,
                                         const std::vector<micros_t>& intervals_us, int n_devices,
                                         micros_t deadline_us, int trials, std::uint64_t seed,
                                         int workers) {
  if (intervals_us.empty()) throw std::invalid_argument("crowd_sweep: empty interval list");
  std::vector<CrowdSweepPoint> out;
  out.reserve(intervals_us.size());
  for (const micros_t interval : intervals_us) {
    AdvertiserConfig adv = advertiser_proto;
    adv.interval_us = interval;
    adv.validate();
    CrowdScenario scenario;
    scenario.n_devices = n_devices;
    scenario.config = DeviceConfig{adv, scanner, 150};
    scenario.deadline_us = deadline_us;
    scenario.trials = trials;
    out.push_back(
        {interval, simulate_crowd(scenario, derive_seed(seed, static_cast<std::uint64_t>(interval), 0),
                                  workers)});
  }
  return out;
}

SuccessEstimate generic_crowd(int n_devices, const DeviceConfig& pi_config, micros_t deadline_us,
                              int trials, std::uint64_t seed, int workers) {
  CrowdScenario scenario;
  scenario.n_devices = n_devices;
  scenario.config = pi_config;
  scenario.deadline_us = deadline_us;
  scenario.trials = trials;
  return simulate_crowd(scenario, seed, workers);
}

}  // namespace ndsim
