#pragma once

#include <stdexcept>

#include "ndsim/time.hpp"

namespace ndsim {

struct PreconditionViolated : std::domain_error {
  using std::domain_error::domain_error;
};

struct Infeasible : std::domain_error {
  using std::domain_error::domain_error;
};

// Lowest worst-case discovery latency reachable by any transmitter with duty
// cycle tx_duty and any receiver with duty cycle rx_duty:
//   L = ceil(1/rx_duty) * airtime/tx_duty + airtime.
// Duty cycles are snapped to parts-per-billion and the expression is evaluated
// in exact integer arithmetic; the ceiling term is discontinuous and float
// noise near integer 1/rx_duty would flip it.
micros_t optimal_latency(double tx_duty, double rx_duty, micros_t beacon_airtime_us);

// Smallest duty cycle b (= tx = rx) with optimal_latency(b, b, airtime) <=
// target. Exact search over parts-per-billion, i.e. well below the 1e-6
// tolerance. Throws Infeasible when even b = 1 misses the target.
double solve_equal_duty(micros_t target_latency_us, micros_t beacon_airtime_us);

// Worst-case discovery latency for interval-based scanning when every
// advertising interval fits inside a scan window:
//   scan_interval - scan_window + interval + random_delay_max.
// Throws PreconditionViolated when interval + random_delay_max >= scan_window;
// in that regime latencies depend on interval/window resonance and must be
// simulated instead.
micros_t worst_case_latency_approx(micros_t interval_us, micros_t random_delay_max_us,
                                   micros_t scan_interval_us, micros_t scan_window_us);

struct EnergyBudget {
  double tx = 0.0;
  double rx = 0.0;
  double total() const { return tx + rx; }
};

// Trade transmission duty for reception duty at constant worst-case latency:
// (tx/k, rx*k). Keeps the tx*rx product; for tx == rx the total budget grows
// by (1/k + k)/2.
EnergyBudget rescale_tradeoff(const EnergyBudget& budget, double k);

}  // namespace ndsim
