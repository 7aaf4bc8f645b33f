#include "ndsim/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "ndsim/exec.hpp"
#include "ndsim/rng.hpp"
#include "trial_internal.hpp"

namespace ndsim {

namespace {

bool listens_on(const PairOptions& options, channel_t channel) {
  if (options.listen_channels.empty()) return true;
  return std::find(options.listen_channels.begin(), options.listen_channels.end(), channel) !=
         options.listen_channels.end();
}

SweepResult aggregate(micros_t interval_us, const std::vector<TrialOutcome>& outcomes) {
  SweepResult r;
  r.interval_us = interval_us;
  r.trials = static_cast<int>(outcomes.size());
  double sum = 0.0;
  int finite = 0;
  for (const auto& o : outcomes) {
    if (o.censored()) {
      ++r.censored;
      continue;
    }
    const micros_t latency = *o.latency_from_first_beacon;
    sum += static_cast<double>(latency);
    ++finite;
    if (!r.max_latency_us || latency > *r.max_latency_us) r.max_latency_us = latency;
  }
  r.mean_latency_us = finite > 0 ? sum / finite : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

TrialOutcome simulate_pair(const DeviceConfig& advertiser_device,
                           const DeviceConfig& scanner_device, micros_t phase_us,
                           micros_t horizon_us, std::uint64_t seed, const PairOptions& options) {
  advertiser_device.validate();
  scanner_device.validate();
  if (!advertiser_device.advertiser)
    throw std::invalid_argument("simulate_pair: first device must advertise");
  if (!scanner_device.scanner)
    throw std::invalid_argument("simulate_pair: second device must scan");
  const AdvertiserConfig& adv = *advertiser_device.advertiser;
  const ScannerConfig& scan = *scanner_device.scanner;
  if (phase_us < 0 || phase_us >= scan.scan_interval_us)
    throw std::invalid_argument("simulate_pair: phase must lie in [0, scan_interval)");
  if (horizon_us <= 0) throw std::invalid_argument("simulate_pair: horizon must be positive");
  if (options.keep_every_kth_event < 1)
    throw std::invalid_argument("simulate_pair: keep_every_kth_event must be >= 1");

  const detail::WindowSchedule windows{scan.scan_interval_us, scan.scan_window_us,
                                       &scan.channel_rotation};
  AdvEventStream events(adv, phase_us, derive_seed(seed, detail::kSaltAdvStream, 0));

  std::optional<detail::BlockingTx> blocker;
  if (scanner_device.advertiser) {
    SplitMix64 phase_rng(derive_seed(seed, detail::kSaltOwnTxPhase, 0));
    const micros_t own_phase = phase_rng.below(scanner_device.advertiser->max_interval_us());
    blocker.emplace(*scanner_device.advertiser, scanner_device.turnaround_us, own_phase,
                    derive_seed(seed, detail::kSaltOwnTxStream, 0));
  }

  std::optional<micros_t> first_beacon;
  while (events.event_start_us() < horizon_us) {
    if (events.event_index() % options.keep_every_kth_event == 0) {
      for (int i = 0; i < events.beacons_per_event(); ++i) {
        const BeaconEvent b = events.beacon(i);
        if (b.end_us() > horizon_us) continue;
        if (!first_beacon) first_beacon = b.start_us;
        if (!listens_on(options, b.channel)) continue;
        if (!windows.receives(b.start_us, b.duration_us, b.channel)) continue;
        if (blocker && blocker->blocks(b.start_us, b.end_us())) continue;
        return {b.start_us - *first_beacon, b.end_us() - *first_beacon, phase_us};
      }
    }
    events.advance();
  }
  return {std::nullopt, std::nullopt, phase_us};
}

std::vector<SweepResult> sweep_latency(const std::vector<micros_t>& interval_grid_us,
                                       const AdvertiserConfig& advertiser_proto,
                                       const ScannerConfig& scanner, const SweepParams& params,
                                       std::uint64_t seed) {
  if (interval_grid_us.empty()) throw std::invalid_argument("sweep_latency: empty interval grid");
  if (params.trials <= 0) throw std::invalid_argument("sweep_latency: trials must be positive");
  scanner.validate();

  PairOptions options;
  options.keep_every_kth_event = params.keep_every_kth_event;

  std::vector<SweepResult> results;
  results.reserve(interval_grid_us.size());
  for (const micros_t interval : interval_grid_us) {
    AdvertiserConfig adv = advertiser_proto;
    adv.interval_us = interval;
    adv.validate();
    DeviceConfig advertiser_device{adv, std::nullopt, 150};
    DeviceConfig scanner_device{std::nullopt, scanner, 150};

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(params.trials));
    run_trials(params.trials, params.workers, [&](std::int64_t t) {
      const std::uint64_t trial_seed =
          derive_seed(seed, static_cast<std::uint64_t>(interval), static_cast<std::uint64_t>(t));
      SplitMix64 rng(trial_seed);
      const micros_t phase = rng.below(scanner.scan_interval_us);
      outcomes[static_cast<std::size_t>(t)] = simulate_pair(
          advertiser_device, scanner_device, phase, params.horizon_us, mix64(trial_seed), options);
    });
    results.push_back(aggregate(interval, outcomes));
  }
  return results;
}

std::vector<SweepResult> degraded_beacon_drop(const std::vector<micros_t>& interval_grid_us,
                                              const AdvertiserConfig& advertiser_proto,
                                              const ScannerConfig& scanner, int keep_every_kth,
                                              SweepParams params, std::uint64_t seed) {
  params.keep_every_kth_event = keep_every_kth;
  return sweep_latency(interval_grid_us, advertiser_proto, scanner, params, seed);
}

}  // namespace ndsim
