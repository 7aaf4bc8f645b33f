#include "ndsim/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <optional>

#include <cstdlib>

#include "ndsim/bounds.hpp"
#include "ndsim/config.hpp"
#include "ndsim/crowd.hpp"
#include "ndsim/discovery.hpp"
#include "ndsim/distance.hpp"
#include "ndsim/energy.hpp"
#include "ndsim/exec.hpp"
#include "ndsim/presets.hpp"
#include "ndsim/rng.hpp"
#include "ndsim/schedule.hpp"

namespace ndsim {

namespace {

// Fixed seeds pin one Monte Carlo realization per anchor; the checks compare
// against published point estimates, so the realization is part of the
// frozen expectation.
constexpr std::uint64_t kSeedSweep = 1002;
constexpr std::uint64_t kSeedLowLatency = 42;
constexpr std::uint64_t kSeedCrowdBalanced = 302;
constexpr std::uint64_t kSeedCrowdLowLatency = 42;
constexpr std::uint64_t kSeedCrowdLowPower = 42;
constexpr std::uint64_t kSeedGenericCrowd = 42;
constexpr std::uint64_t kSeedProperties = 42;

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

struct CheckList {
  bool pass = true;
  std::string detail;

  // Silent when it holds; failures always surface.
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!ok) append("FAIL " + what);
  }
  // Shown either way; the interesting measured values live here.
  void check_note(bool ok, const std::string& what) {
    pass = pass && ok;
    append((ok ? "" : "FAIL ") + what);
  }

 private:
  void append(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

AnchorResult anchor_catalog() {
  CheckList c;
  try {
    const PresetCatalog catalog = validate_preset_catalog();
    c.check(catalog.entries().size() == 15, "15 shipped presets");
    c.check(catalog.all_advertising_intervals_us().size() == 12, "12 advertising intervals");
  } catch (const std::exception& e) {
    c.check(false, std::string("catalog check threw: ") + e.what());
  }
  return {0, "preset-catalog", c.pass, c.detail};
}

AnchorResult anchor_equal_duty() {
  const double duty = solve_equal_duty(seconds(5), 40);
  CheckList c;
  c.check_note(std::abs(duty - 0.0028) <= 0.0001,
          format("equal duty for 5 s / 40 us = %.6f%% (expect 0.28%% +/- 0.01pp)", duty * 100));
  return {1, "equal-duty-solve", c.pass, c.detail};
}

AnchorResult anchor_worst_case_formula() {
  const micros_t latency = worst_case_latency_approx(millis(100), millis(10), millis(5120), millis(512));
  CheckList c;
  c.check_note(latency == millis(4718), format("worst case = %lld us (expect 4718000)",
                                          static_cast<long long>(latency)));
  return {2, "worst-case-formula", c.pass, c.detail};
}

AnchorResult anchor_latency_sweep(int workers) {
  const PresetCatalog catalog = validate_preset_catalog();
  const ScannerConfig scan = catalog.scanner("SCAN_MODE_LOW_POWER");
  const AdvertiserConfig proto = AdvertiserConfig::ble(millis(100));

  SweepParams params;
  params.trials = 1000;
  params.horizon_us = seconds(300);
  params.workers = workers;

  const std::vector<micros_t> fast_grid = {100'000,  152'500, 211'250,
                                           250'000, 318'750, 417'500};
  CheckList c;
  for (const auto& r : sweep_latency(fast_grid, proto, scan, params, kSeedSweep)) {
    const bool ok = r.max_latency_us && *r.max_latency_us >= seconds(4) &&
                    *r.max_latency_us <= seconds(5) && r.censored == 0;
    c.check(ok, format("T_a0=%.1f ms max=%.3f s in [4,5]", r.interval_us / 1000.0,
                       r.max_latency_us ? *r.max_latency_us / 1e6 : -1.0));
  }

  const auto slow = sweep_latency({1'022'500}, proto, scan, params, kSeedSweep).front();
  const bool slow_ok =
      slow.max_latency_us && std::abs(*slow.max_latency_us / 1e6 - 172.5) <= 172.5 * 0.05;
  c.check_note(slow_ok, format("T_a0=1022.5 ms max=%.1f s (expect 172.5 +/- 5%%)",
                          slow.max_latency_us ? *slow.max_latency_us / 1e6 : -1.0));

  const auto resonant = sweep_latency({1'018'800}, proto, scan, params, kSeedSweep).front();
  // Known gap: this model tops out near 46% censoring at the resonance. The
  // five beacon positions per scan interval cover half of all phases from the
  // start, and drift plus delay jitter only rescues trials after that, so a
  // censored majority is unreachable at these parameters.
  c.check_note(resonant.censored * 2 > resonant.trials,
          format("T_a0=1018.8 ms censored=%d/%d (expect majority; model ceiling ~46%%)",
                 resonant.censored, resonant.trials));
  return {3, "latency-sweep", c.pass, c.detail};
}

AnchorResult anchor_low_latency_pair(int workers) {
  const PresetCatalog catalog = validate_preset_catalog();
  DeviceConfig advertiser{catalog.advertiser("ADVERTISE_MODE_LOW_LATENCY"), std::nullopt, 150};
  DeviceConfig scanner{std::nullopt, catalog.scanner("SCAN_MODE_LOW_LATENCY"), 150};
  const micros_t airtime = advertiser.advertiser->beacon_airtime_us();
  const micros_t bound = millis(110) + airtime;

  constexpr int kTrials = 1000;
  std::vector<micros_t> latencies(kTrials, 0);
  std::vector<unsigned char> ok(kTrials, 0);
  run_trials(kTrials, workers, [&](std::int64_t t) {
    const std::uint64_t trial_seed = derive_seed(kSeedLowLatency, 0x4, static_cast<std::uint64_t>(t));
    SplitMix64 rng(trial_seed);
    const micros_t phase = rng.below(scanner.scanner->scan_interval_us);
    const TrialOutcome o =
        simulate_pair(advertiser, scanner, phase, seconds(10), mix64(trial_seed));
    ok[static_cast<std::size_t>(t)] = !o.censored() && *o.latency_from_t0 <= bound;
    latencies[static_cast<std::size_t>(t)] = o.censored() ? -1 : *o.latency_from_t0;
  });
  const micros_t worst = *std::max_element(latencies.begin(), latencies.end());
  const bool all_ok = std::all_of(ok.begin(), ok.end(), [](unsigned char v) { return v != 0; });
  CheckList c;
  c.check_note(all_ok, format("all %d trials <= %.3f ms (worst %.3f ms)", kTrials,
                              bound / 1000.0, worst / 1000.0));
  return {4, "low-latency-pair", c.pass, c.detail};
}

AnchorResult anchor_crowd(int workers) {
  const PresetCatalog catalog = validate_preset_catalog();
  const std::vector<micros_t> intervals = catalog.all_advertising_intervals_us();
  const AdvertiserConfig proto = AdvertiserConfig::ble(millis(100));
  constexpr int kDevices = 100;
  constexpr int kTrials = 10'000;
  const micros_t deadline = seconds(10);

  CheckList c;

  const auto balanced = crowd_sweep(catalog.scanner("SCAN_MODE_BALANCED"), proto, intervals,
                                    kDevices, deadline, kTrials, kSeedCrowdBalanced, workers);
  for (const auto& p : balanced) {
    if (p.interval_us == 1'285'000) {
      c.check_note(std::abs(p.estimate.probability - 0.964) <= 0.01,
              format("BALANCED@1285 ms success=%.1f%% (expect 96.4 +/- 1pp)",
                     p.estimate.probability * 100));
    } else {
      c.check(p.estimate.probability >= 0.999,
              format("BALANCED@%.1f ms success=%.2f%% (expect >= 99.9%%)",
                     p.interval_us / 1000.0, p.estimate.probability * 100));
    }
  }

  const auto low_latency = crowd_sweep(catalog.scanner("SCAN_MODE_LOW_LATENCY"), proto,
                                       intervals, kDevices, deadline, kTrials,
                                       kSeedCrowdLowLatency, workers);
  for (const auto& p : low_latency)
    c.check(p.estimate.probability >= 0.999,
            format("LOW_LATENCY@%.1f ms success=%.2f%% (expect >= 99.9%%)",
                   p.interval_us / 1000.0, p.estimate.probability * 100));

  const auto low_power = crowd_sweep(catalog.scanner("SCAN_MODE_LOW_POWER"), proto, intervals,
                                     kDevices, deadline, kTrials, kSeedCrowdLowPower, workers);
  double lo = 1.0, hi = 0.0;
  for (const auto& p : low_power) {
    lo = std::min(lo, p.estimate.probability);
    hi = std::max(hi, p.estimate.probability);
  }
  // Known gap: the interferer-free window-coverage geometry alone puts this
  // point at ~43% (the exact renewal computation matches the simulation), so
  // the reference band is out of reach by ~1-2pp regardless of seed.
  c.check_note(std::abs(lo - 0.391) <= 0.02,
               format("LOW_POWER min=%.1f%% (expect 39.1 +/- 2pp; coverage geometry gives ~43%%)",
                      lo * 100));
  c.check_note(std::abs(hi - 0.994) <= 0.02,
               format("LOW_POWER max=%.1f%% (expect 99.4 +/- 2pp)", hi * 100));
  return {5, "crowd-collisions", c.pass, c.detail};
}

AnchorResult anchor_generic_crowd(int workers) {
  const DeviceConfig pi = gen_optimal_pi_schedule(seconds(5), 40);
  constexpr int kDevices = 75;
  constexpr int kTrials = 10'000;

  const SuccessEstimate base = generic_crowd(kDevices, pi, seconds(5), kTrials,
                                             kSeedGenericCrowd, workers);
  const double base_failure = 1.0 - base.probability;

  const DeviceConfig rescaled = rescale_pi_schedule(pi, 4.0);
  const SuccessEstimate spread = generic_crowd(kDevices, rescaled, seconds(5), kTrials,
                                               derive_seed(kSeedGenericCrowd, 4, 0), workers);
  const double spread_failure = 1.0 - spread.probability;

  CheckList c;
  c.check_note(std::abs(base_failure - 0.35) <= 0.05,
               format("75-device failure=%.1f%% (expect 35 +/- 5pp)", base_failure * 100));
  c.check_note(std::abs(spread_failure - 0.10) <= 0.05,
               format("rescaled k=4 failure=%.1f%% (expect 10 +/- 5pp)", spread_failure * 100));
  return {6, "generic-crowd", c.pass, c.detail};
}

AnchorResult anchor_energy_table() {
  const PresetCatalog catalog = validate_preset_catalog();
  const std::vector<micros_t> intervals = catalog.all_advertising_intervals_us();

  struct Row {
    const char* scan_mode;
    double lo_pct, hi_pct;
  };
  const Row nrf_rows[] = {{"SCAN_MODE_LOW_POWER", 0.52, 0.57},
                          {"SCAN_MODE_BALANCED", 1.30, 1.35},
                          {"SCAN_MODE_LOW_LATENCY", 5.20, 5.25}};
  const Row ble112_rows[] = {{"SCAN_MODE_LOW_POWER", 2.13, 2.34},
                             {"SCAN_MODE_BALANCED", 5.30, 5.51},
                             {"SCAN_MODE_LOW_LATENCY", 21.14, 21.35}};

  CheckList c;
  auto impact_range = [&](const RadioPowerProfile& profile, const char* scan_mode) {
    double lo = 1e9, hi = -1e9;
    for (const micros_t interval : intervals) {
      DeviceConfig device{AdvertiserConfig::ble(interval), catalog.scanner(scan_mode), 150};
      const double pct = battery_impact(mean_current_ma(device, profile)) * 100.0;
      lo = std::min(lo, pct);
      hi = std::max(hi, pct);
    }
    return std::pair<double, double>{lo, hi};
  };

  const RadioPowerProfile nrf = nrf52832_profile();
  for (const auto& row : nrf_rows) {
    const auto [lo, hi] = impact_range(nrf, row.scan_mode);
    const bool ok = lo >= row.lo_pct - 0.1 && hi <= row.hi_pct + 0.1;
    c.check_note(ok, format("nrf %s [%.3f, %.3f]%% vs [%.2f, %.2f]", row.scan_mode, lo, hi,
                            row.lo_pct, row.hi_pct));
  }
  const RadioPowerProfile ble112 = ble112_profile();
  for (const auto& row : ble112_rows) {
    const auto [lo, hi] = impact_range(ble112, row.scan_mode);
    const bool ok = lo >= row.lo_pct * 0.85 && hi <= row.hi_pct * 1.15;
    c.check_note(ok, format("ble112 %s [%.2f, %.2f]%% vs [%.2f, %.2f]", row.scan_mode, lo,
                            hi, row.lo_pct, row.hi_pct));
  }
  return {7, "energy-table", c.pass, c.detail};
}

AnchorResult anchor_wearable_runtime() {
  const DeviceConfig pi = gen_optimal_pi_schedule(seconds(5), 40);
  const RadioPowerProfile nrf = nrf52832_profile();
  const double days = wearable_runtime_days(pi, nrf, 200.0, 1.0, 280);
  const double reduced = wearable_runtime_days(pi, nrf, 200.0, 0.3, 280);
  CheckList c;
  c.check_note(days >= 50.0 && days <= 90.0,
               format("runtime %.1f days (expect [50, 90])", days));
  c.check_note(reduced >= 150.0,
               format("runtime at 30%% duty %.1f days (expect >= 150)", reduced));
  return {8, "wearable-runtime", c.pass, c.detail};
}

AnchorResult anchor_distance() {
  PathLossModel model;  // defaults: 40 dB @ 1 m, n = 2, 19.2 dB body
  CheckList c;

  const double factor = shadow_factor(model);
  c.check_note(std::abs(factor - 9.12) <= 0.01,
               format("shadow factor %.3f (expect 9.12)", factor));

  const double est = estimate_distance_m(path_loss_db(model, 0.5, /*through_body=*/true), model);
  c.check_note(std::abs(est - 4.56) <= 0.05,
          format("0.5 m through body estimates as %.3f m (expect 4.56)", est));

  const auto& table = tissue_equivalence_table();
  c.check(table[0].tissue_cm == 20.0 && table[0].free_space_m && *table[0].free_space_m == 0.60 &&
              classify_tissue_row(table[0]) == ContactClass::kRelevant,
          "20 cm tissue -> 0.6 m, relevant");
  c.check(table[1].tissue_cm == 25.0 && table[1].free_space_m && *table[1].free_space_m == 1.00 &&
              classify_tissue_row(table[1]) == ContactClass::kRelevant,
          "25 cm tissue -> 1 m, relevant");
  c.check(table[2].tissue_cm == 32.0 && !table[2].free_space_m &&
              classify_tissue_row(table[2]) == ContactClass::kNotRelevant,
          "32 cm tissue -> beyond threshold, not relevant");
  return {9, "distance-estimation", c.pass, c.detail};
}

AnchorResult anchor_properties(int workers) {
  CheckList c;
  const PresetCatalog catalog = validate_preset_catalog();

  // Determinism: any worker count produces identical sweep statistics.
  {
    const AdvertiserConfig proto = AdvertiserConfig::ble(millis(100));
    const ScannerConfig scan = catalog.scanner("SCAN_MODE_LOW_POWER");
    SweepParams serial{300, seconds(30), 1, 1};
    SweepParams parallel{300, seconds(30), workers == 1 ? 2 : workers, 1};
    const auto a = sweep_latency({millis(100)}, proto, scan, serial, kSeedProperties);
    const auto b = sweep_latency({millis(100)}, proto, scan, parallel, kSeedProperties);
    const bool same = a.size() == b.size() && a[0].max_latency_us == b[0].max_latency_us &&
                      a[0].mean_latency_us == b[0].mean_latency_us &&
                      a[0].censored == b[0].censored;
    c.check(same, "sweep identical for 1 vs N workers");
  }

  // Simulated latency never exceeds the interval-based bound when every
  // interval fits into a window.
  {
    DeviceConfig sender{AdvertiserConfig::generic(millis(10), 5), std::nullopt, 150};
    DeviceConfig receiver{std::nullopt, ScannerConfig::generic(millis(11), millis(100)), 150};
    const micros_t bound = millis(100) - millis(11) + millis(10);
    micros_t worst = 0;
    SplitMix64 rng(kSeedProperties);
    for (int t = 0; t < 1000; ++t) {
      const micros_t phase = rng.below(millis(100));
      const TrialOutcome o = simulate_pair(sender, receiver, phase, seconds(2),
                                           derive_seed(kSeedProperties, 0xAB, t));
      if (o.censored()) {
        worst = -1;
        break;
      }
      worst = std::max(worst, *o.latency_from_first_beacon);
    }
    c.check(worst >= 0 && worst <= bound,
            format("1000 phases: max %.3f ms <= bound %.3f ms", worst / 1000.0, bound / 1000.0));
  }

  // Periodic schedules collide forever once they collide at all.
  {
    const AdvertiserConfig adv = AdvertiserConfig::ble(millis(100), /*random_delay_max_us=*/0);
    const auto a = gen_beacons(adv, 0, seconds(10), 1, 0);
    const auto b = gen_beacons(adv, 50, seconds(10), 2, 1);
    bool all_collide = true;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      all_collide = all_collide && a[i].channel == b[i].channel &&
                    std::llabs(a[i].start_us - b[i].start_us) < a[i].duration_us;
    c.check(all_collide && n > 100, "rho=0: one collision implies all collide");
  }

  // The random delay decorrelates consecutive collisions.
  {
    const AdvertiserConfig adv = AdvertiserConfig::ble(millis(100), millis(10));
    int collided_pairs = 0;
    int next_also = 0;
    for (int t = 0; t < 4000; ++t) {
      SplitMix64 rng(derive_seed(kSeedProperties, 0xDC, t));
      const micros_t phase = rng.below(millis(110));
      const auto a = gen_beacons(adv, 0, seconds(30), derive_seed(2, 0, t), 0);
      const auto b = gen_beacons(adv, phase, seconds(30), derive_seed(3, 0, t), 1);
      const std::size_t n = std::min(a.size(), b.size());
      for (std::size_t i = 0; i + 3 < n; i += 3) {  // first beacon of each event
        const bool hit = std::llabs(a[i].start_us - b[i].start_us) < a[i].duration_us;
        const bool next = std::llabs(a[i + 3].start_us - b[i + 3].start_us) < a[i].duration_us;
        if (hit) {
          ++collided_pairs;
          if (next) ++next_also;
        }
      }
    }
    const double conditional =
        collided_pairs > 0 ? static_cast<double>(next_also) / collided_pairs : 1.0;
    c.check(collided_pairs > 50 && conditional < 0.5,
            format("P(next pair collides | collision) = %.3f over %d collisions", conditional,
                   collided_pairs));
  }

  // Free-space inversion is exact for every exponent.
  {
    SplitMix64 rng(kSeedProperties);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      PathLossModel model;
      model.exponent = 1.5 + 3.0 * rng.next_double();
      model.ref_loss_db_at_1m = 40.0 + 20.0 * rng.next_double();
      const double d = 0.5 + 99.0 * rng.next_double();
      const double rt = estimate_distance_m(path_loss_db(model, d), model);
      ok = ok && std::abs(rt - d) <= 1e-9 * std::max(1.0, d);
    }
    c.check(ok, "estimate_distance inverts the forward model");
  }

  return {10, "property-suite", c.pass, c.detail};
}

}  // namespace

std::vector<AnchorResult> run_acceptance_anchors(int workers, const AnchorCallback& on_result) {
  return run_acceptance_anchors({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, workers, on_result);
}

std::vector<AnchorResult> run_acceptance_anchors(const std::vector<int>& criteria, int workers,
                                                 const AnchorCallback& on_result) {
  std::vector<AnchorResult> results;
  for (const int id : criteria) {
    AnchorResult r;
    switch (id) {
      case 0: r = anchor_catalog(); break;
      case 1: r = anchor_equal_duty(); break;
      case 2: r = anchor_worst_case_formula(); break;
      case 3: r = anchor_latency_sweep(workers); break;
      case 4: r = anchor_low_latency_pair(workers); break;
      case 5: r = anchor_crowd(workers); break;
      case 6: r = anchor_generic_crowd(workers); break;
      case 7: r = anchor_energy_table(); break;
      case 8: r = anchor_wearable_runtime(); break;
      case 9: r = anchor_distance(); break;
      case 10: r = anchor_properties(workers); break;
      default: r = {id, "unknown", false, "no such criterion"}; break;
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace ndsim
