#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ndsim/energy.hpp"
#include "ndsim/presets.hpp"
#include "ndsim/schedule.hpp"

using namespace ndsim;

namespace {

DeviceConfig scan_only(const char* mode) {
  return {std::nullopt, validate_preset_catalog().scanner(mode), 150};
}

}  // namespace

TEST_CASE("continuous scanning draws the full reception current") {
  const RadioPowerProfile nrf = nrf52832_profile();
  const double i = mean_current_ma(scan_only("SCAN_MODE_LOW_LATENCY"), nrf);
  CHECK(i == doctest::Approx(nrf.i_rx_ma).epsilon(0.001));
}

TEST_CASE("scan-mode current scales with the rx duty cycle") {
  const RadioPowerProfile nrf = nrf52832_profile();
  // 0.25 duty plus two ramp-ups per window.
  const double balanced = mean_current_ma(scan_only("SCAN_MODE_BALANCED"), nrf);
  const double expected = (1'024'000.0 + 280.0) / 4'096'000.0 * nrf.i_rx_ma;
  CHECK(balanced == doctest::Approx(expected));
  CHECK(balanced == doctest::Approx(0.25 * nrf.i_rx_ma).epsilon(0.01));

  const double low_power = mean_current_ma(scan_only("SCAN_MODE_LOW_POWER"), nrf);
  CHECK(balanced / low_power == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("advertise-only current covers beacons plus one ramp per event") {
  const RadioPowerProfile nrf = nrf52832_profile();
  DeviceConfig d{AdvertiserConfig::ble(millis(100)), std::nullopt, 150};
  // (3*128 + 140) us at i_tx per 105 ms mean period.
  const double expected = (384.0 + 140.0) / 105'000.0 * nrf.i_tx_ma;
  CHECK(mean_current_ma(d, nrf) == doctest::Approx(expected));
}

TEST_CASE("roles are additive") {
  const RadioPowerProfile nrf = nrf52832_profile();
  DeviceConfig both{AdvertiserConfig::ble(millis(250)),
                    validate_preset_catalog().scanner("SCAN_MODE_BALANCED"), 150};
  DeviceConfig adv{AdvertiserConfig::ble(millis(250)), std::nullopt, 150};
  CHECK(mean_current_ma(both, nrf) ==
        doctest::Approx(mean_current_ma(adv, nrf) + mean_current_ma(scan_only("SCAN_MODE_BALANCED"), nrf)));
}

TEST_CASE("battery impact is the current ratio against the phone baseline") {
  // 3000 mAh / 24 h = 125 mA baseline.
  CHECK(battery_impact(1.25) == doctest::Approx(0.01));
  CHECK(battery_impact(0.0) == 0.0);
  // Linearity.
  CHECK(battery_impact(2.5) == doctest::Approx(2.0 * battery_impact(1.25)));
  const PhoneBaseline small{1000.0, 10.0};
  CHECK(battery_impact(10.0, small) == doctest::Approx(0.1));
}

TEST_CASE("advertising interval barely moves the battery impact") {
  const PresetCatalog catalog = validate_preset_catalog();
  const RadioPowerProfile nrf = nrf52832_profile();
  for (const char* mode : {"SCAN_MODE_LOW_POWER", "SCAN_MODE_BALANCED", "SCAN_MODE_LOW_LATENCY"}) {
    double lo = 1e9, hi = -1e9;
    for (micros_t interval : catalog.all_advertising_intervals_us()) {
      DeviceConfig d{AdvertiserConfig::ble(interval), catalog.scanner(mode), 150};
      const double pct = battery_impact(mean_current_ma(d, nrf)) * 100.0;
      lo = std::min(lo, pct);
      hi = std::max(hi, pct);
    }
    CHECK(hi - lo < 0.06);  // percentage points
  }
}

TEST_CASE("wearable runtime at the 5 s periodic-interval operating point") {
  const DeviceConfig pi = gen_optimal_pi_schedule(seconds(5), 40);
  const double days = wearable_runtime_days(pi, nrf52832_profile(), 200.0);
  CHECK(days > 45.0);
  CHECK(days < 95.0);

  // Linear in the active fraction: halving the duty doubles the runtime.
  const double half = wearable_runtime_days(pi, nrf52832_profile(), 200.0, 0.5);
  CHECK(half == doctest::Approx(2.0 * days));
}

TEST_CASE("wearable runtime guards the degenerate cases") {
  const DeviceConfig pi = gen_optimal_pi_schedule(seconds(5), 40);
  CHECK(std::isinf(wearable_runtime_days(pi, nrf52832_profile(), 200.0, 0.0)));
  CHECK_THROWS_AS(wearable_runtime_days(pi, nrf52832_profile(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(wearable_runtime_days(pi, nrf52832_profile(), 200.0, 1.5),
                  std::invalid_argument);
}

TEST_CASE("profiles are addressable by name") {
  CHECK(profile_by_name("nrf52832").name == "nrf52832");
  CHECK(profile_by_name("ble112").name == "ble112");
  CHECK(profile_by_name("ble112").i_rx_ma > profile_by_name("nrf52832").i_rx_ma);
  CHECK_THROWS_AS(profile_by_name("cc2650"), std::invalid_argument);
}
