#pragma once

#include <cstdint>

namespace ndsim {

// All schedule arithmetic is exact integer microseconds; no floating-point
// time anywhere in the timeline code.
using micros_t = std::int64_t;

constexpr micros_t millis(micros_t v) { return v * 1000; }
constexpr micros_t seconds(micros_t v) { return v * 1'000'000; }

}  // namespace ndsim
