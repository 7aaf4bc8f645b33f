// ndsim command line: seeded neighbor-discovery experiments exported as CSV.
// Every data file embeds the tool version, the seed, and the resolved
// parameters; identical invocations produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ndsim/anchors.hpp"
#include "ndsim/bounds.hpp"
#include "ndsim/config.hpp"
#include "ndsim/crowd.hpp"
#include "ndsim/discovery.hpp"
#include "ndsim/distance.hpp"
#include "ndsim/energy.hpp"
#include "ndsim/presets.hpp"
#include "ndsim/schedule.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using ndsim::micros_t;
using ndsim::millis;

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

// "12.5" -> 12500 us, "40us" -> 40, "1.5s" -> 1500000. Default unit: ms.
micros_t parse_duration_us(std::string token) {
  double scale = 1000.0;
  if (token.size() > 2 && token.compare(token.size() - 2, 2, "us") == 0) {
    scale = 1.0;
    token.resize(token.size() - 2);
  } else if (token.size() > 2 && token.compare(token.size() - 2, 2, "ms") == 0) {
    token.resize(token.size() - 2);
  } else if (token.size() > 1 && token.back() == 's') {
    scale = 1'000'000.0;
    token.resize(token.size() - 1);
  }
  size_t used = 0;
  const double value = std::stod(token, &used);
  if (used != token.size()) throw CLI::ValidationError("bad duration: " + token);
  return static_cast<micros_t>(std::llround(value * scale));
}

// Comma list ("100,250,1000") or range ("20:1300:0.625"); values in ms unless
// suffixed with us/ms/s.
std::vector<micros_t> parse_grid_us(const std::string& text) {
  std::vector<micros_t> out;
  if (text.find(':') != std::string::npos) {
    std::istringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
      throw CLI::ValidationError("grid must be start:stop:step");
    const micros_t start = parse_duration_us(a);
    const micros_t stop = parse_duration_us(b);
    const micros_t step = parse_duration_us(c);
    if (step <= 0 || stop < start) throw CLI::ValidationError("bad grid range");
    for (micros_t v = start; v <= stop; v += step) out.push_back(v);
  } else {
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(parse_duration_us(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty interval list");
  return out;
}

// Data sink: --out file or stdout. Progress goes to stderr only.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw CLI::ValidationError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_run_record(std::ostream& os, const std::string& command,
                      const std::vector<std::pair<std::string, std::string>>& params) {
  os << "# ndsim " << kVersion << "\n# command=" << command;
  for (const auto& [k, v] : params) os << ' ' << k << '=' << v;
  os << '\n';
}

std::string us_str(micros_t v) { return std::to_string(v); }

int run_bounds(const std::string& targets_text, micros_t omega_us, const std::string& out_path) {
  const std::vector<micros_t> targets = parse_grid_us(targets_text);
  Output out(out_path);
  auto& os = out.stream();
  write_run_record(os, "bounds",
                   {{"target_l_us", targets_text}, {"omega_us", us_str(omega_us)}});
  os << "target_l_us,duty_tx,duty_rx,achieved_latency_us,eta\n";
  for (const micros_t target : targets) {
    const double duty = ndsim::solve_equal_duty(target, omega_us);
    const micros_t achieved = ndsim::optimal_latency(duty, duty, omega_us);
    os << target << ',' << fixed(duty, 9) << ',' << fixed(duty, 9) << ',' << achieved << ','
       << fixed(2 * duty, 9) << '\n';
  }
  return 0;
}

int run_sweep(const std::string& scan_mode, const std::string& grid_text, int trials,
              micros_t horizon_us, int keep_every, std::uint64_t seed, int workers,
              const std::string& out_path) {
  const ndsim::PresetCatalog catalog = ndsim::validate_preset_catalog();
  const std::vector<micros_t> grid = parse_grid_us(grid_text);
  ndsim::SweepParams params;
  params.trials = trials;
  params.horizon_us = horizon_us;
  params.workers = workers;
  params.keep_every_kth_event = keep_every;

  std::cerr << "sweep-latency: " << grid.size() << " grid points x " << trials << " trials\n";
  const auto results = ndsim::sweep_latency(grid, ndsim::AdvertiserConfig::ble(grid.front()),
                                            catalog.scanner(scan_mode), params, seed);

  Output out(out_path);
  auto& os = out.stream();
  write_run_record(os, "sweep-latency",
                   {{"scan_mode", scan_mode},
                    {"ta0_grid", grid_text},
                    {"trials", std::to_string(trials)},
                    {"horizon_us", us_str(horizon_us)},
                    {"keep_every", std::to_string(keep_every)},
                    {"seed", std::to_string(seed)}});
  os << "ta0_us,max_us,mean_us,censored,trials\n";
  for (const auto& r : results) {
    os << r.interval_us << ',';
    if (r.max_latency_us)
      os << *r.max_latency_us << ',' << fixed(r.mean_latency_us, 3);
    else
      os << ',';
    os << ',' << r.censored << ',' << r.trials << '\n';
  }
  return 0;
}

int run_crowd(const std::string& scan_mode, const std::string& ta0_text, int devices,
              micros_t deadline_us, int trials, std::uint64_t seed, int workers,
              micros_t generic_l_us, micros_t omega_us, double rescale_k,
              const std::string& out_path) {
  Output out(out_path);
  auto& os = out.stream();

  if (generic_l_us > 0) {
    ndsim::DeviceConfig pi = ndsim::gen_optimal_pi_schedule(generic_l_us, omega_us);
    if (rescale_k != 1.0) pi = ndsim::rescale_pi_schedule(pi, rescale_k);
    std::cerr << "crowd (generic): " << devices << " devices, " << trials << " trials\n";
    const auto e = ndsim::generic_crowd(devices, pi, deadline_us, trials, seed, workers);
    write_run_record(os, "crowd",
                     {{"generic_l_us", us_str(generic_l_us)},
                      {"omega_us", us_str(omega_us)},
                      {"rescale_k", fixed(rescale_k, 3)},
                      {"devices", std::to_string(devices)},
                      {"deadline_us", us_str(deadline_us)},
                      {"trials", std::to_string(trials)},
                      {"seed", std::to_string(seed)}});
    os << "ta0_us,devices,deadline_us,trials,successes,probability,wilson_low,wilson_high\n";
    os << pi.advertiser->interval_us << ',' << devices << ',' << deadline_us << ',' << e.trials
       << ',' << e.successes << ',' << fixed(e.probability, 6) << ',' << fixed(e.wilson_low, 6)
       << ',' << fixed(e.wilson_high, 6) << '\n';
    return 0;
  }

  const ndsim::PresetCatalog catalog = ndsim::validate_preset_catalog();
  const std::vector<micros_t> intervals = parse_grid_us(ta0_text);
  std::cerr << "crowd: " << intervals.size() << " intervals x " << trials << " trials, "
            << devices << " devices\n";
  const auto points =
      ndsim::crowd_sweep(catalog.scanner(scan_mode), ndsim::AdvertiserConfig::ble(intervals.front()),
                         intervals, devices, deadline_us, trials, seed, workers);
  write_run_record(os, "crowd",
                   {{"scan_mode", scan_mode},
                    {"ta0", ta0_text},
                    {"devices", std::to_string(devices)},
                    {"deadline_us", us_str(deadline_us)},
                    {"trials", std::to_string(trials)},
                    {"seed", std::to_string(seed)}});
  os << "ta0_us,devices,deadline_us,trials,successes,probability,wilson_low,wilson_high\n";
  for (const auto& p : points)
    os << p.interval_us << ',' << devices << ',' << deadline_us << ',' << p.estimate.trials << ','
       << p.estimate.successes << ',' << fixed(p.estimate.probability, 6) << ','
       << fixed(p.estimate.wilson_low, 6) << ',' << fixed(p.estimate.wilson_high, 6) << '\n';
  return 0;
}

int run_energy(const std::string& profile_name, const std::string& scan_mode,
               const std::string& ta0_text, const std::string& out_path) {
  const ndsim::PresetCatalog catalog = ndsim::validate_preset_catalog();
  const ndsim::RadioPowerProfile profile = ndsim::profile_by_name(profile_name);
  const std::vector<micros_t> intervals = parse_grid_us(ta0_text);
  Output out(out_path);
  auto& os = out.stream();
  write_run_record(os, "energy",
                   {{"profile", profile_name}, {"scan_mode", scan_mode}, {"ta0", ta0_text}});
  os << "scan_mode,ta0_us,profile,i_ble_ma,impact_pct\n";
  for (const micros_t interval : intervals) {
    ndsim::DeviceConfig device{ndsim::AdvertiserConfig::ble(interval),
                               catalog.scanner(scan_mode), 150};
    const double i = ndsim::mean_current_ma(device, profile);
    os << scan_mode << ',' << interval << ',' << profile.name << ',' << fixed(i, 6) << ','
       << fixed(ndsim::battery_impact(i) * 100.0, 4) << '\n';
  }
  return 0;
}

int run_wearable(const std::string& profile_name, micros_t target_l_us, micros_t omega_us,
                 double battery_mah, double active_fraction, micros_t wake_overhead_us,
                 const std::string& out_path) {
  const ndsim::RadioPowerProfile profile = ndsim::profile_by_name(profile_name);
  const ndsim::DeviceConfig pi = ndsim::gen_optimal_pi_schedule(target_l_us, omega_us);
  const double days =
      ndsim::wearable_runtime_days(pi, profile, battery_mah, active_fraction, wake_overhead_us);
  Output out(out_path);
  auto& os = out.stream();
  write_run_record(os, "wearable",
                   {{"profile", profile_name},
                    {"target_l_us", us_str(target_l_us)},
                    {"omega_us", us_str(omega_us)},
                    {"battery_mah", fixed(battery_mah, 1)},
                    {"active_fraction", fixed(active_fraction, 3)},
                    {"wake_overhead_us", us_str(wake_overhead_us)}});
  os << "profile,interval_us,window_us,scan_interval_us,battery_mah,active_fraction,"
        "runtime_days\n";
  os << profile.name << ',' << pi.advertiser->interval_us << ',' << pi.scanner->scan_window_us
     << ',' << pi.scanner->scan_interval_us << ',' << fixed(battery_mah, 1) << ','
     << fixed(active_fraction, 3) << ',' << fixed(days, 2) << '\n';
  return 0;
}

int run_distance(double true_m, double body_db, double exponent, double threshold_m,
                 double ref_loss_db, const std::string& out_path) {
  ndsim::PathLossModel model;
  model.body_attenuation_db = body_db;
  model.exponent = exponent;
  model.ref_loss_db_at_1m = ref_loss_db;
  const double observed = ndsim::path_loss_db(model, true_m, /*through_body=*/body_db > 0);
  const double estimate = ndsim::estimate_distance_m(observed, model);
  const auto verdict = ndsim::classify_contact(estimate, threshold_m);
  Output out(out_path);
  auto& os = out.stream();
  write_run_record(os, "distance",
                   {{"true_m", fixed(true_m, 3)},
                    {"body_db", fixed(body_db, 2)},
                    {"exponent", fixed(exponent, 2)},
                    {"threshold_m", fixed(threshold_m, 2)}});
  os << "true_m,body_db,exponent,ref_loss_db,observed_loss_db,estimate_m,threshold_m,"
        "classification\n";
  os << fixed(true_m, 3) << ',' << fixed(body_db, 2) << ',' << fixed(exponent, 2) << ','
     << fixed(ref_loss_db, 2) << ',' << fixed(observed, 3) << ',' << fixed(estimate, 3) << ','
     << fixed(threshold_m, 2) << ','
     << (verdict == ndsim::ContactClass::kRelevant ? "relevant" : "not_relevant") << '\n';
  return 0;
}

int run_timeline(const std::string& advertise_mode, const std::string& scan_mode,
                 micros_t horizon_us, micros_t phase_us, std::uint64_t seed,
                 const std::string& out_path) {
  const ndsim::PresetCatalog catalog = ndsim::validate_preset_catalog();
  const auto beacons =
      ndsim::gen_beacons(catalog.advertiser(advertise_mode), phase_us, horizon_us, seed, 0);
  const auto windows = ndsim::gen_scan_windows(catalog.scanner(scan_mode), 0, horizon_us, 1);
  Output out(out_path);
  write_run_record(out.stream(), "timeline",
                   {{"advertise_mode", advertise_mode},
                    {"scan_mode", scan_mode},
                    {"horizon_us", us_str(horizon_us)},
                    {"phase_us", us_str(phase_us)},
                    {"seed", std::to_string(seed)}});
  ndsim::write_timeline_csv(out.stream(), beacons, windows);
  return 0;
}

int run_verify(int workers, const std::string& only_text) {
  std::vector<int> only;
  if (!only_text.empty()) {
    std::istringstream ss(only_text);
    std::string item;
    while (std::getline(ss, item, ',')) only.push_back(std::stoi(item));
  }
  auto print = [](const ndsim::AnchorResult& r) {
    std::printf("[%s] criterion %2d  %-20s %s\n", r.pass ? "PASS" : "FAIL", r.criterion,
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  };
  const auto results = only.empty() ? ndsim::run_acceptance_anchors(workers, print)
                                    : ndsim::run_acceptance_anchors(only, workers, print);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BLE-style neighbor discovery simulator and analysis toolkit"};
  app.set_config("--config", "", "Read options from a config file (flag=value, [subcommand] sections)");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global --seed/--workers/--out may follow the subcommand

  std::uint64_t seed = 42;
  int workers = 0;
  std::string out_path;
  app.add_option("--seed", seed, "Master seed; every result derives from it")->capture_default_str();
  app.add_option("--workers", workers, "Trial threads; 0 = all cores, 1 = serial")
      ->capture_default_str();
  app.add_option("--out", out_path, "Output CSV path (default: stdout)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Duty-cycle and latency trade-off table");
  std::string targets = "5000";
  micros_t omega_us = 40;
  bounds->add_option("--target-l-ms,--target-l", targets, "Target latencies (ms list or range)")
      ->capture_default_str();
  bounds->add_option("--omega-us", omega_us, "Beacon airtime in us")->capture_default_str();

  // sweep-latency
  auto* sweep = app.add_subcommand("sweep-latency", "Pairwise discovery latency over an interval grid");
  std::string scan_mode = "SCAN_MODE_LOW_POWER";
  std::string grid = "100,250,1000";
  int trials = 1000;
  micros_t horizon_ms = 300'000;
  int keep_every = 1;
  sweep->add_option("--scan-mode", scan_mode, "Scanner preset name")->capture_default_str();
  sweep->add_option("--ta0-grid", grid, "Advertising intervals: list or start:stop:step (ms)")
      ->capture_default_str();
  sweep->add_option("--trials", trials, "Trials per grid point")->capture_default_str();
  sweep->add_option("--horizon-ms", horizon_ms, "Censoring horizon in ms")->capture_default_str();
  sweep->add_option("--keep-every", keep_every, "Keep only every k-th advertising event")
      ->capture_default_str();

  // crowd
  auto* crowd = app.add_subcommand("crowd", "Discovery success probability in a crowd");
  std::string crowd_scan_mode = "SCAN_MODE_LOW_POWER";
  std::string ta0_list = "100";
  int devices = 100;
  micros_t deadline_ms = 10'000;
  int crowd_trials = 10'000;
  micros_t generic_l_ms = 0;
  micros_t crowd_omega_us = 40;
  double rescale_k = 1.0;
  crowd->add_option("--scan-mode", crowd_scan_mode, "Scanner preset name")->capture_default_str();
  crowd->add_option("--ta0", ta0_list, "Advertising intervals (ms list)")->capture_default_str();
  crowd->add_option("--devices", devices, "Devices in the collision domain")->capture_default_str();
  crowd->add_option("--deadline-ms", deadline_ms, "Success deadline in ms")->capture_default_str();
  crowd->add_option("--trials", crowd_trials, "Trials per interval")->capture_default_str();
  crowd->add_option("--generic-l-ms", generic_l_ms,
                    "Use the generic periodic-interval protocol tuned for this latency instead of presets");
  crowd->add_option("--omega-us", crowd_omega_us, "Beacon airtime for the generic protocol")
      ->capture_default_str();
  crowd->add_option("--rescale-k", rescale_k, "Generic protocol: divide tx duty, multiply rx duty")
      ->capture_default_str();

  // energy
  auto* energy = app.add_subcommand("energy", "Mean current and battery impact per preset");
  std::string profile_name = "nrf52832";
  std::string energy_scan_mode = "SCAN_MODE_BALANCED";
  std::string energy_ta0 = "100,250,1000";
  energy->add_option("--profile", profile_name, "Radio profile: nrf52832 or ble112")
      ->capture_default_str();
  energy->add_option("--scan-mode", energy_scan_mode, "Scanner preset name")->capture_default_str();
  energy->add_option("--ta0", energy_ta0, "Advertising intervals (ms list)")->capture_default_str();

  // wearable
  auto* wearable = app.add_subcommand("wearable", "Battery runtime of a dedicated tracing device");
  std::string wear_profile = "nrf52832";
  micros_t target_l_ms = 5000;
  micros_t wear_omega_us = 40;
  double battery_mah = 200.0;
  double active_fraction = 1.0;
  micros_t wake_overhead_us = 280;
  wearable->add_option("--profile", wear_profile, "Radio profile")->capture_default_str();
  wearable->add_option("--target-l-ms", target_l_ms, "Worst-case latency target (ms)")
      ->capture_default_str();
  wearable->add_option("--omega-us", wear_omega_us, "Beacon airtime in us")->capture_default_str();
  wearable->add_option("--battery-mah", battery_mah, "Battery capacity")->capture_default_str();
  wearable->add_option("--active-fraction", active_fraction, "Fraction of time the radio duty runs")
      ->capture_default_str();
  wearable->add_option("--wake-overhead-us", wake_overhead_us, "Full-current overhead per wake-up")
      ->capture_default_str();

  // distance
  auto* distance = app.add_subcommand("distance", "Path-loss distance estimate and classification");
  double true_m = 0.5;
  double body_db = 19.2;
  double exponent = 2.0;
  double threshold_m = 1.5;
  double ref_loss_db = 40.0;
  distance->add_option("--true-m", true_m, "True distance in metres")->capture_default_str();
  distance->add_option("--body-db", body_db, "Body attenuation on the path (0 = line of sight)")
      ->capture_default_str();
  distance->add_option("--exponent", exponent, "Path-loss exponent")->capture_default_str();
  distance->add_option("--threshold-m", threshold_m, "Relevance threshold")->capture_default_str();
  distance->add_option("--ref-loss-db", ref_loss_db, "Reference loss at 1 m")->capture_default_str();

  // timeline
  auto* timeline = app.add_subcommand("timeline", "Dump a beacon/scan-window timeline as CSV");
  std::string tl_advertise = "ADVERTISE_MODE_BALANCED";
  std::string tl_scan = "SCAN_MODE_BALANCED";
  micros_t tl_horizon_ms = 5000;
  micros_t tl_phase_ms = 0;
  timeline->add_option("--advertise-mode", tl_advertise, "Advertiser preset name")
      ->capture_default_str();
  timeline->add_option("--scan-mode", tl_scan, "Scanner preset name")->capture_default_str();
  timeline->add_option("--horizon-ms", tl_horizon_ms, "Timeline length (ms)")->capture_default_str();
  timeline->add_option("--phase-ms", tl_phase_ms, "Advertiser phase (ms)")->capture_default_str();

  // verify-anchors
  auto* verify = app.add_subcommand("verify-anchors", "Run the acceptance checks and report pass/fail");
  std::string only;
  verify->add_option("--only", only, "Comma list of criterion numbers (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bounds) return run_bounds(targets, omega_us, out_path);
    if (*sweep)
      return run_sweep(scan_mode, grid, trials, millis(horizon_ms), keep_every, seed, workers,
                       out_path);
    if (*crowd)
      return run_crowd(crowd_scan_mode, ta0_list, devices, millis(deadline_ms), crowd_trials,
                       seed, workers, millis(generic_l_ms), crowd_omega_us, rescale_k, out_path);
    if (*energy) return run_energy(profile_name, energy_scan_mode, energy_ta0, out_path);
    if (*wearable)
      return run_wearable(wear_profile, millis(target_l_ms), wear_omega_us, battery_mah,
                          active_fraction, wake_overhead_us, out_path);
    if (*distance)
      return run_distance(true_m, body_db, exponent, threshold_m, ref_loss_db, out_path);
    if (*timeline)
      return run_timeline(tl_advertise, tl_scan, millis(tl_horizon_ms), millis(tl_phase_ms), seed,
                          out_path);
    if (*verify) return run_verify(workers, only);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
