#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ndsim/bounds.hpp"
#include "ndsim/schedule.hpp"

using namespace ndsim;

TEST_CASE("zero random delay gives an exactly periodic beacon sequence") {
  AdvertiserConfig adv = AdvertiserConfig::ble(millis(100), /*random_delay_max_us=*/0);
  adv.channels = {37};
  const auto beacons = gen_beacons(adv, 0, seconds(1), 99);
  REQUIRE(beacons.size() == 10);
  for (std::size_t i = 0; i < beacons.size(); ++i) {
    CHECK(beacons[i].start_us == static_cast<micros_t>(i) * millis(100));
    CHECK(beacons[i].duration_us == 128);
  }
}

TEST_CASE("each advertising event carries the three channels in order") {
  const AdvertiserConfig adv = AdvertiserConfig::ble(millis(100));
  const auto beacons = gen_beacons(adv, 0, seconds(2), 1);
  REQUIRE(beacons.size() % 3 == 0);
  for (std::size_t e = 0; e < beacons.size(); e += 3) {
    CHECK(beacons[e].channel == 37);
    CHECK(beacons[e + 1].channel == 38);
    CHECK(beacons[e + 2].channel == 39);
    // inter-beacon spacing: airtime plus the configured gap
    CHECK(beacons[e + 1].start_us - beacons[e].start_us == 128 + 150);
    CHECK(beacons[e + 2].start_us - beacons[e + 1].start_us == 128 + 150);
  }
}

TEST_CASE("mean inter-event gap approaches interval plus half the delay bound") {
  const AdvertiserConfig adv = AdvertiserConfig::ble(millis(100));
  AdvEventStream stream(adv, 0, 7);
  const int kEvents = 10'000;
  micros_t last = stream.event_start_us();
  double sum = 0;
  for (int i = 0; i < kEvents; ++i) {
    stream.advance();
    sum += static_cast<double>(stream.event_start_us() - last);
    last = stream.event_start_us();
  }
  const double mean = sum / kEvents;
  CHECK(std::abs(mean - 105'000.0) < 100.0);  // 100 ms + 5 ms, within 0.1 ms
}

TEST_CASE("beacon generation is pure: same seed, same list") {
  const AdvertiserConfig adv = AdvertiserConfig::ble(millis(250));
  const auto a = gen_beacons(adv, 1234, seconds(60), 42);
  const auto b = gen_beacons(adv, 1234, seconds(60), 42);
  CHECK(a == b);
  const auto c = gen_beacons(adv, 1234, seconds(60), 43);
  CHECK(a != c);
}

TEST_CASE("no two beacons of one device overlap") {
  const AdvertiserConfig adv = AdvertiserConfig::ble(millis(20));
  const auto beacons = gen_beacons(adv, 0, seconds(30), 5);
  for (std::size_t i = 1; i < beacons.size(); ++i)
    CHECK(beacons[i].start_us >= beacons[i - 1].end_us());
}

TEST_CASE("continuous scanning yields contiguous windows rotating channels") {
  const ScannerConfig scan = ScannerConfig::ble(millis(4096), millis(4096));
  const auto windows = gen_scan_windows(scan, 0, millis(12288));
  REQUIRE(windows.size() == 3);
  CHECK(windows[0].start_us == 0);
  CHECK(windows[1].start_us == millis(4096));
  CHECK(windows[2].start_us == millis(8192));
  CHECK(windows[0].channel == 37);
  CHECK(windows[1].channel == 38);
  CHECK(windows[2].channel == 39);
}

TEST_CASE("scan windows follow phase + k * interval") {
  const ScannerConfig scan = ScannerConfig::ble(millis(512), millis(5120));
  const auto windows = gen_scan_windows(scan, millis(100), seconds(15));
  REQUIRE(windows.size() == 3);
  CHECK(windows[0].start_us == millis(100));
  CHECK(windows[1].start_us == millis(5220));
  CHECK(windows[2].start_us == millis(10340));
}

TEST_CASE("window coverage fraction approaches the rx duty cycle") {
  const ScannerConfig scan = ScannerConfig::ble(millis(1024), millis(4096));
  const micros_t horizon = seconds(410);  // ~100 periods
  micros_t covered = 0;
  for (const auto& w : gen_scan_windows(scan, 0, horizon)) covered += w.duration_us;
  const double fraction = static_cast<double>(covered) / static_cast<double>(horizon);
  CHECK(std::abs(fraction - 0.25) < 0.0025);
}

TEST_CASE("optimal periodic-interval schedule for 5 s at 40 us") {
  const DeviceConfig device = gen_optimal_pi_schedule(seconds(5), 40);
  REQUIRE(device.advertiser);
  REQUIRE(device.scanner);
  const auto& adv = *device.advertiser;
  const auto& scan = *device.scanner;

  // Solved duty ~0.28%: interval ~14.3 ms, window = interval + airtime,
  // scan interval ~5.1 s. Recompute from the solved duty as the oracle.
  const double duty = solve_equal_duty(seconds(5), 40);
  CHECK(adv.interval_us == std::llround(40.0 / duty));
  CHECK(scan.scan_window_us == adv.interval_us + 40);
  CHECK(scan.scan_interval_us ==
        std::llround(static_cast<double>(scan.scan_window_us) / duty));
  CHECK(adv.interval_us == doctest::Approx(14300).epsilon(0.02));
  CHECK(scan.scan_interval_us == doctest::Approx(5'100'000).epsilon(0.02));

  CHECK(adv.random_delay_max_us == 0);
  CHECK(adv.channels == std::vector<channel_t>{0});
  CHECK(adv.beacon_airtime_us() == 40);
  CHECK(scan.channel_rotation == std::vector<channel_t>{0});
}

TEST_CASE("periodic-interval schedule rejects unreachable targets") {
  CHECK_THROWS_AS(gen_optimal_pi_schedule(40, 40), Infeasible);
  CHECK_THROWS_AS(gen_optimal_pi_schedule(79, 40), Infeasible);
}

TEST_CASE("rescaling a periodic-interval schedule") {
  const DeviceConfig pi = gen_optimal_pi_schedule(seconds(5), 40);
  const DeviceConfig wide = rescale_pi_schedule(pi, 4.0);
  const DutyCycles before = duty_cycles(pi);
  const DutyCycles after = duty_cycles(wide);
  CHECK(after.tx == doctest::Approx(before.tx / 4).epsilon(0.01));
  CHECK(after.rx == doctest::Approx(before.rx * 4).epsilon(0.01));
  CHECK(wide.advertiser->interval_us == doctest::Approx(4 * pi.advertiser->interval_us).epsilon(0.01));
}

TEST_CASE("timeline dump format") {
  AdvertiserConfig adv = AdvertiserConfig::ble(millis(100), 0);
  adv.channels = {37};
  const auto beacons = gen_beacons(adv, millis(50), millis(300), 1, /*device_id=*/7);
  const auto windows = gen_scan_windows(ScannerConfig::ble(millis(100), millis(200)), 0, millis(300), 3);
  std::ostringstream os;
  write_timeline_csv(os, beacons, windows);
  CHECK(os.str() ==
        "device_id,kind,start_us,duration_us,channel\n"
        "3,scan,0,100000,37\n"
        "7,beacon,50000,128,37\n"
        "7,beacon,150000,128,37\n"
        "3,scan,200000,100000,38\n"
        "7,beacon,250000,128,37\n");
}
