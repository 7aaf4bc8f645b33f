#include <stdexcept>

#include "doctest.h"
#include "ndsim/config.hpp"

using namespace ndsim;

TEST_CASE("duty cycles of the Android scan presets") {
  DeviceConfig low_power{std::nullopt, ScannerConfig::ble(millis(512), millis(5120)), 150};
  CHECK(duty_cycles(low_power).rx == doctest::Approx(0.10));
  CHECK(duty_cycles(low_power).tx == 0.0);

  DeviceConfig continuous{std::nullopt, ScannerConfig::ble(millis(4096), millis(4096)), 150};
  CHECK(duty_cycles(continuous).rx == doctest::Approx(1.0));
}

TEST_CASE("tx duty counts all per-channel beacons over the mean interval") {
  // 16 bytes -> 128 us airtime, 3 channels, mean interval 100 ms + 5 ms.
  DeviceConfig d{AdvertiserConfig::ble(millis(100)), std::nullopt, 150};
  CHECK(duty_cycles(d).tx == doctest::Approx(384.0 / 105000.0));  // ~0.366%
  CHECK(duty_cycles(d).rx == 0.0);
}

TEST_CASE("rx duty is scale invariant") {
  for (micros_t k : {1, 2, 7, 32}) {
    DeviceConfig d{std::nullopt, ScannerConfig::ble(k * millis(1024), k * millis(4096)), 150};
    CHECK(duty_cycles(d).rx == doctest::Approx(0.25));
  }
}

TEST_CASE("BLE advertiser validation") {
  CHECK_THROWS_AS(AdvertiserConfig::ble(millis(10)), std::invalid_argument);   // below 20 ms
  CHECK_THROWS_AS(AdvertiserConfig::ble(millis(10241)), std::invalid_argument);
  CHECK_THROWS_AS(AdvertiserConfig::ble(millis(100), 10'000, 8), std::invalid_argument);
  CHECK_NOTHROW(AdvertiserConfig::ble(millis(20)));
  CHECK_NOTHROW(AdvertiserConfig::ble(millis(10240)));

  AdvertiserConfig bad = AdvertiserConfig::ble(millis(100));
  bad.channels = {37, 38, 40};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.channels = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("generic advertiser allows any positive interval and short packets") {
  CHECK_NOTHROW(AdvertiserConfig::generic(100, 1));
  CHECK_NOTHROW(AdvertiserConfig::generic(seconds(100), 5));
  CHECK_THROWS_AS(AdvertiserConfig::generic(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(AdvertiserConfig::generic(100, 0), std::invalid_argument);
  CHECK(AdvertiserConfig::generic(millis(10), 5).beacon_airtime_us() == 40);
}

TEST_CASE("scanner validation") {
  CHECK_THROWS_AS(ScannerConfig::ble(millis(512), millis(256)), std::invalid_argument);
  CHECK_THROWS_AS(ScannerConfig::ble(0, millis(256)), std::invalid_argument);
  CHECK_NOTHROW(ScannerConfig::ble(millis(4096), millis(4096)));

  ScannerConfig bad = ScannerConfig::ble(millis(512), millis(5120));
  bad.channel_rotation = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("a device needs at least one role") {
  DeviceConfig neither;
  CHECK_THROWS_AS(neither.validate(), std::invalid_argument);
  DeviceConfig scan_only{std::nullopt, ScannerConfig::ble(millis(512), millis(5120)), 150};
  CHECK_NOTHROW(scan_only.validate());
}
