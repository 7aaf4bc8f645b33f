#include <algorithm>

#include "doctest.h"
#include "ndsim/discovery.hpp"
#include "ndsim/presets.hpp"
#include "ndsim/rng.hpp"

using namespace ndsim;

namespace {

DeviceConfig adv_device(AdvertiserConfig a) { return {std::move(a), std::nullopt, 150}; }
DeviceConfig scan_device(ScannerConfig s) { return {std::nullopt, std::move(s), 150}; }

}  // namespace

TEST_CASE("a continuous single-channel scanner receives the first beacon") {
  const DeviceConfig adv = adv_device(AdvertiserConfig::generic(millis(10), 5));
  const DeviceConfig scan = scan_device(ScannerConfig::generic(millis(500), millis(500)));
  for (micros_t phase : {micros_t{0}, millis(3), millis(499) - 80}) {
    const TrialOutcome o = simulate_pair(adv, scan, phase, seconds(5), 1);
    REQUIRE_FALSE(o.censored());
    CHECK(*o.latency_from_first_beacon == 0);
    CHECK(*o.latency_from_t0 == 40);  // reception completes one airtime later
    CHECK(o.phase_offset_us == phase);
  }
}

TEST_CASE("periodic aliasing never discovers: interval equals scan interval") {
  const DeviceConfig adv = adv_device(AdvertiserConfig::generic(millis(100), 5));
  const DeviceConfig scan = scan_device(ScannerConfig::generic(millis(20), millis(100)));
  // Beacons land at phase + k*100 ms; a phase inside the gap stays there.
  const TrialOutcome o = simulate_pair(adv, scan, millis(50), seconds(30), 3);
  CHECK(o.censored());
  CHECK_FALSE(o.latency_from_t0.has_value());
}

TEST_CASE("aliasing resolves once the horizon is irrelevant but phase matches") {
  const DeviceConfig adv = adv_device(AdvertiserConfig::generic(millis(100), 5));
  const DeviceConfig scan = scan_device(ScannerConfig::generic(millis(20), millis(100)));
  const TrialOutcome o = simulate_pair(adv, scan, millis(10), seconds(30), 3);
  REQUIRE_FALSE(o.censored());
  CHECK(*o.latency_from_first_beacon == 0);
}

TEST_CASE("extending the horizon never changes a finite latency") {
  const PresetCatalog catalog = validate_preset_catalog();
  const DeviceConfig adv = adv_device(catalog.advertiser("ADVERTISE_MODE_BALANCED"));
  const DeviceConfig scan = scan_device(catalog.scanner("SCAN_MODE_LOW_POWER"));
  int resolved = 0;
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t seed = derive_seed(11, 0, t);
    SplitMix64 rng(seed);
    const micros_t phase = rng.below(millis(5120));
    const TrialOutcome short_run = simulate_pair(adv, scan, phase, seconds(3), seed);
    const TrialOutcome long_run = simulate_pair(adv, scan, phase, seconds(60), seed);
    REQUIRE_FALSE(long_run.censored());
    if (!short_run.censored()) {
      CHECK(short_run.latency_from_first_beacon == long_run.latency_from_first_beacon);
      CHECK(short_run.latency_from_t0 == long_run.latency_from_t0);
      ++resolved;
    }
  }
  CHECK(resolved >= 5);  // both branches exercised
}

TEST_CASE("removing scanner listen channels only delays discovery") {
  const PresetCatalog catalog = validate_preset_catalog();
  const DeviceConfig adv = adv_device(catalog.advertiser("ADVERTISE_MODE_LOW_LATENCY"));
  const DeviceConfig scan = scan_device(catalog.scanner("SCAN_MODE_BALANCED"));
  PairOptions full;
  PairOptions reduced;
  reduced.listen_channels = {37, 39};
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t seed = derive_seed(21, 0, t);
    SplitMix64 rng(seed);
    const micros_t phase = rng.below(millis(4096));
    const TrialOutcome a = simulate_pair(adv, scan, phase, seconds(60), seed, full);
    const TrialOutcome b = simulate_pair(adv, scan, phase, seconds(60), seed, reduced);
    REQUIRE_FALSE(a.censored());
    REQUIRE_FALSE(b.censored());
    CHECK(*b.latency_from_first_beacon >= *a.latency_from_first_beacon);
  }
}

TEST_CASE("self-blocking: a scanner that transmits punches holes into its windows") {
  DeviceConfig scanner;
  scanner.advertiser = AdvertiserConfig::generic(millis(10), 5);
  scanner.scanner = ScannerConfig::generic(seconds(10), seconds(10));

  const DeviceConfig adv = adv_device(AdvertiserConfig::generic(millis(10), 5));

  // Matching 10 ms periods on both sides: the remote beacon either clears the
  // scanner's own tx hole and is received at t=0, or sits in it every period.
  int censored = 0;
  for (int t = 0; t < 400; ++t) {
    const TrialOutcome o = simulate_pair(adv, scanner, 0, millis(500), derive_seed(32, 0, t));
    if (o.censored())
      ++censored;
    else
      CHECK(*o.latency_from_first_beacon == 0);
  }
  // Hole fraction ~ (40 + 40 + 2*150) / 10000 ~ 3.8% of phases.
  CHECK(censored > 0);
  CHECK(censored < 40);

  // A pure scanner with the same schedule never misses.
  const DeviceConfig pure = scan_device(ScannerConfig::generic(seconds(10), seconds(10)));
  const TrialOutcome o = simulate_pair(adv, pure, 0, millis(500), 1);
  REQUIRE_FALSE(o.censored());
  CHECK(*o.latency_from_first_beacon == 0);
}

TEST_CASE("sweep aggregates latency statistics and censoring") {
  const PresetCatalog catalog = validate_preset_catalog();
  SweepParams params;
  params.trials = 400;
  params.horizon_us = seconds(60);
  const auto results = sweep_latency({millis(100)}, AdvertiserConfig::ble(millis(100)),
                                     catalog.scanner("SCAN_MODE_LOW_POWER"), params, 2024);
  REQUIRE(results.size() == 1);
  const SweepResult& r = results.front();
  CHECK(r.trials == 400);
  CHECK(r.censored == 0);
  REQUIRE(r.max_latency_us);
  // Worst case near scan_interval - scan_window + interval + delay; mean well below.
  CHECK(*r.max_latency_us > seconds(4));
  CHECK(*r.max_latency_us < millis(4750));
  CHECK(r.mean_latency_us < *r.max_latency_us);
  CHECK(r.mean_latency_us > 0);
}

TEST_CASE("dropping every second advertising event doubles the effective interval") {
  // 50 ms beacon period against a 100 ms scan interval with a 30 ms window.
  // Kept-every-2nd thins the period to 100 ms, which aliases with the scan
  // schedule: from phase 50 ms the thinned stream never meets a window while
  // the full stream is received half a period later.
  const DeviceConfig advertiser = adv_device(AdvertiserConfig::generic(millis(50), 16));
  const DeviceConfig scan = scan_device(ScannerConfig::generic(millis(30), millis(100)));

  PairOptions drop;
  drop.keep_every_kth_event = 2;
  const TrialOutcome thinned = simulate_pair(advertiser, scan, millis(50), seconds(2), 5, drop);
  CHECK(thinned.censored());

  const TrialOutcome full = simulate_pair(advertiser, scan, millis(50), seconds(2), 5, {});
  REQUIRE_FALSE(full.censored());
  CHECK(*full.latency_from_first_beacon == millis(50));

  // keep_every = 1 is identical to the plain run.
  PairOptions keep_all;
  keep_all.keep_every_kth_event = 1;
  const TrialOutcome same = simulate_pair(advertiser, scan, millis(50), seconds(2), 5, keep_all);
  CHECK(same.latency_from_first_beacon == full.latency_from_first_beacon);

  // Dropping everything but one event in sight of a short horizon censors.
  PairOptions sparse;
  sparse.keep_every_kth_event = 1'000'000;
  const TrialOutcome starved = simulate_pair(advertiser, scan, millis(50), seconds(2), 5, sparse);
  CHECK(starved.censored());
}

TEST_CASE("degraded sweep wrapper matches sweep with the drop option") {
  const PresetCatalog catalog = validate_preset_catalog();
  SweepParams params;
  params.trials = 100;
  params.horizon_us = seconds(120);
  const auto degraded =
      degraded_beacon_drop({millis(417) + 500}, AdvertiserConfig::ble(millis(100)),
                           catalog.scanner("SCAN_MODE_LOW_POWER"), 2, params, 77);
  params.keep_every_kth_event = 2;
  const auto direct = sweep_latency({millis(417) + 500}, AdvertiserConfig::ble(millis(100)),
                                    catalog.scanner("SCAN_MODE_LOW_POWER"), params, 77);
  REQUIRE(degraded.size() == 1);
  CHECK(degraded[0].max_latency_us == direct[0].max_latency_us);
  CHECK(degraded[0].censored == direct[0].censored);
}

TEST_CASE("phase must lie inside one scan interval") {
  const DeviceConfig adv = adv_device(AdvertiserConfig::generic(millis(10), 5));
  const DeviceConfig scan = scan_device(ScannerConfig::generic(millis(50), millis(100)));
  CHECK_THROWS_AS(simulate_pair(adv, scan, millis(100), seconds(1), 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_pair(adv, scan, -1, seconds(1), 1), std::invalid_argument);
}
