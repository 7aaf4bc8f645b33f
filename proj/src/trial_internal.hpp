#pragma once

#include <deque>
#include <utility>

#include "ndsim/config.hpp"
#include "ndsim/schedule.hpp"

namespace ndsim::detail {

// Reception geometry of a free-running scan schedule: window k opens at
// phase + k * interval for every integer k, so a window that opened before
// t = 0 still receives. A transmission is receivable when it lies entirely
// inside the window whose interval contains it and that window listens on
// the matching channel.
struct WindowSchedule {
  micros_t interval_us;
  micros_t window_us;
  const std::vector<channel_t>* rotation;
  micros_t phase_us = 0;

  bool receives(micros_t start_us, micros_t duration_us, channel_t channel) const {
    const micros_t rel = start_us - phase_us;
    std::int64_t k = rel / interval_us;
    if (rel < 0 && rel % interval_us != 0) --k;
    const micros_t window_start = phase_us + k * interval_us;
    if (start_us + duration_us > window_start + window_us) return false;
    const std::int64_t r = static_cast<std::int64_t>(rotation->size());
    return (*rotation)[static_cast<std::size_t>((k % r + r) % r)] == channel;
  }
};

// Holes a device's own transmissions punch into its reception: each own
// beacon blocks [start - turnaround, end + turnaround]. Queries must come in
// non-decreasing start order.
class BlockingTx {
 public:
  BlockingTx(const AdvertiserConfig& config, micros_t turnaround_us, micros_t phase_us,
             std::uint64_t seed)
      : turnaround_(turnaround_us), stream_(config, phase_us, seed) {}

  bool blocks(micros_t start_us, micros_t end_us) {
    while (stream_.event_start_us() - turnaround_ <= end_us) {
      for (int i = 0; i < stream_.beacons_per_event(); ++i) {
        const BeaconEvent b = stream_.beacon(i);
        intervals_.push_back({b.start_us - turnaround_, b.end_us() + turnaround_});
      }
      stream_.advance();
    }
    while (!intervals_.empty() && intervals_.front().second <= start_us) intervals_.pop_front();
    for (const auto& [lo, hi] : intervals_) {
      if (lo >= end_us) break;
      if (hi > start_us) return true;
    }
    return false;
  }

 private:
  micros_t turnaround_;
  AdvEventStream stream_;
  std::deque<std::pair<micros_t, micros_t>> intervals_;
};

// Stream salts for deriving independent per-role rng streams from one trial
// seed. Keeping the advertiser's delay stream separate from everything else
// lets variant runs (listen masks, longer horizons) see identical timelines.
inline constexpr std::uint64_t kSaltAdvStream = 0xA1;
inline constexpr std::uint64_t kSaltOwnTxPhase = 0xB2;
inline constexpr std::uint64_t kSaltOwnTxStream = 0xB3;
inline constexpr std::uint64_t kSaltInterferer = 0xC4;

}  // namespace ndsim::detail
