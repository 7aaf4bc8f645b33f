#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ndsim {

// Trial dispatch. Every body writes only to its own trial slot, so the
// parallel and serial paths must produce identical results; tests compare
// them and the benchmark times them against each other.

// Serial reference implementation.
template <typename Body>
void run_trials_serial(std::int64_t n, Body&& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// OpenMP when available and workers != 1; falls back to the serial loop.
// workers == 0 means the OpenMP default.
template <typename Body>
void run_trials(std::int64_t n, int workers, Body&& body) {
#ifdef _OPENMP
  if (workers != 1) {
    if (workers > 0) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
      for (std::int64_t i = 0; i < n; ++i) body(i);
    } else {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < n; ++i) body(i);
    }
    return;
  }
#else
  (void)workers;
#endif
  run_trials_serial(n, body);
}

}  // namespace ndsim
