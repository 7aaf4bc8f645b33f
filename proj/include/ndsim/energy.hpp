#pragma once

#include <string>

#include "ndsim/config.hpp"
#include "ndsim/time.hpp"

namespace ndsim {

// Current draws of one radio. ramp_overhead_us is charged at full current
// once per advertising event and twice per scan window (ramp-up plus
// ramp-down). Sleep current is neglected.
struct RadioPowerProfile {
  double i_tx_ma = 0.0;
  double i_rx_ma = 0.0;
  micros_t ramp_overhead_us = 0;
  double voltage_v = 3.0;
  std::string name;
};

// Shipped profiles. nrf52832 carries effective currents fitted to the
// published scan/advertise figures for that SoC; ble112 is a coarse fit to an
// older, much hungrier radio. TX power 0 dBm, 3 V.
RadioPowerProfile nrf52832_profile();
RadioPowerProfile ble112_profile();
RadioPowerProfile profile_by_name(const std::string& name);

struct PhoneBaseline {
  double battery_mah = 3000.0;
  double baseline_runtime_h = 24.0;  // battery life without contact tracing
};

// Mean current of a radio running the device's advertise/scan schedule, in
// mA. Reception: (window + 2*ramp)/scan_interval at i_rx. Transmission: all
// per-channel beacons plus one ramp per event over the mean advertising
// period at i_tx.
double mean_current_ma(const DeviceConfig& device, const RadioPowerProfile& profile);

// Fraction by which continuous operation shortens the baseline battery life:
// mean radio current over the phone's baseline mean current.
double battery_impact(double i_ble_ma, const PhoneBaseline& baseline = {});

// Battery life in days for a dedicated device where every wake-up (one per
// advertising event, one per scan window) costs wake_overhead_us at full
// current. active_fraction scales the duty (e.g. radio off while not worn);
// returns +infinity when the mean current vanishes.
double wearable_runtime_days(const DeviceConfig& device, const RadioPowerProfile& profile,
                             double battery_mah, double active_fraction = 1.0,
                             micros_t wake_overhead_us = 280);

}  // namespace ndsim
