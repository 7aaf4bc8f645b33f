#include "ndsim/bounds.hpp"

#include <cmath>
#include <cstdint>

namespace ndsim {

namespace {

constexpr std::int64_t kPpb = 1'000'000'000;

std::int64_t to_ppb(double duty, const char* what) {
  if (!(duty > 0.0) || duty > 1.0) throw std::invalid_argument(std::string(what) + " must lie in (0, 1]");
  std::int64_t p = std::llround(duty * static_cast<double>(kPpb));
  if (p < 1) p = 1;
  if (p > kPpb) p = kPpb;
  return p;
}

// optimal_latency(p/kPpb, p/kPpb, airtime) <= target, exactly.
bool equal_duty_feasible(std::int64_t p, micros_t airtime, micros_t target) {
  if (target <= airtime) return false;
  const std::int64_t n = (kPpb + p - 1) / p;  // ceil(1/duty)
  // n * airtime * kPpb / p + airtime <= target  <=>  n*airtime*kPpb <= (target-airtime)*p
  const __int128 lhs = static_cast<__int128>(n) * airtime * kPpb;
  const __int128 rhs = static_cast<__int128>(target - airtime) * p;
  return lhs <= rhs;
}

}  // namespace

micros_t optimal_latency(double tx_duty, double rx_duty, micros_t beacon_airtime_us) {
  if (beacon_airtime_us <= 0) throw std::invalid_argument("beacon airtime must be positive");
  const std::int64_t ptx = to_ppb(tx_duty, "tx duty");
  const std::int64_t prx = to_ppb(rx_duty, "rx duty");
  const std::int64_t n = (kPpb + prx - 1) / prx;
  const __int128 num = static_cast<__int128>(n) * beacon_airtime_us * kPpb;
  const micros_t first_term = static_cast<micros_t>((num + ptx / 2) / ptx);
  return first_term + beacon_airtime_us;
}

double solve_equal_duty(micros_t target_latency_us, micros_t beacon_airtime_us) {
  if (beacon_airtime_us <= 0) throw std::invalid_argument("beacon airtime must be positive");
  if (target_latency_us <= beacon_airtime_us)
    throw Infeasible("target latency must exceed the beacon airtime");
  if (!equal_duty_feasible(kPpb, beacon_airtime_us, target_latency_us))
    throw Infeasible("no duty cycle <= 1 reaches the target latency");
  // Latency is non-increasing in the duty cycle, so the feasible set is an
  // upper segment; binary search for its lower edge.
  std::int64_t lo = 1, hi = kPpb;
  if (equal_duty_feasible(lo, beacon_airtime_us, target_latency_us)) return 1.0 / kPpb;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (equal_duty_feasible(mid, beacon_airtime_us, target_latency_us))
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<double>(hi) / static_cast<double>(kPpb);
}

micros_t worst_case_latency_approx(micros_t interval_us, micros_t random_delay_max_us,
                                   micros_t scan_interval_us, micros_t scan_window_us) {
  if (interval_us <= 0 || scan_interval_us <= 0 || scan_window_us <= 0 || random_delay_max_us < 0)
    throw std::invalid_argument("intervals must be positive");
  if (interval_us + random_delay_max_us >= scan_window_us)
    throw PreconditionViolated(
        "worst_case_latency_approx requires interval + random delay < scan window; simulate "
        "instead");
  return scan_interval_us - scan_window_us + interval_us + random_delay_max_us;
}

EnergyBudget rescale_tradeoff(const EnergyBudget& budget, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("rescale factor must be positive");
  EnergyBudget out{budget.tx / k, budget.rx * k};
  if (out.tx <= 0.0 || out.tx > 1.0 || out.rx <= 0.0 || out.rx > 1.0)
    throw std::domain_error("rescaled duty cycle out of (0, 1]");
  return out;
}

}  // namespace ndsim
