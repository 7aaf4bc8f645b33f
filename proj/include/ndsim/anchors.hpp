#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ndsim {

// One acceptance check: a published figure or property the simulator must
// reproduce at a pinned tolerance and seed.
struct AnchorResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

using AnchorCallback = std::function<void(const AnchorResult&)>;

// Runs every acceptance anchor. The heavy ones fan trials out over `workers`
// threads (0 = all); results are identical for any worker count. The optional
// callback fires as each anchor finishes.
std::vector<AnchorResult> run_acceptance_anchors(int workers = 0,
                                                 const AnchorCallback& on_result = {});

// Subset by criterion number (0 = preset catalog self-check, 1..10 as in the
// acceptance suite).
std::vector<AnchorResult> run_acceptance_anchors(const std::vector<int>& criteria,
                                                 int workers = 0,
                                                 const AnchorCallback& on_result = {});

}  // namespace ndsim
