#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ndsim/config.hpp"

namespace ndsim {

// Advertising intervals recommended for iOS accessories, in microseconds.
// 152.5 ms .. 1285 ms; all exactly representable in integer microseconds.
inline constexpr std::array<micros_t, 9> kIosAdvertisingIntervalsUs = {
    152'500, 211'250, 318'750, 417'500, 546'250, 760'000, 852'500, 1'022'500, 1'285'000};

struct ModePreset {
  std::string name;
  std::optional<AdvertiserConfig> advertiser;
  std::optional<ScannerConfig> scanner;
};

// Named parameter sets: the three Android advertise modes, the three Android
// scan modes, and the nine iOS advertising intervals (IOS_1..IOS_9).
// User-extensible; the shipped entries are fixed.
class PresetCatalog {
 public:
  const ModePreset& lookup(const std::string& name) const;  // throws std::out_of_range
  const AdvertiserConfig& advertiser(const std::string& name) const;
  const ScannerConfig& scanner(const std::string& name) const;
  bool contains(const std::string& name) const;

  void add(ModePreset preset);  // rejects duplicate names

  const std::vector<ModePreset>& entries() const { return entries_; }
  std::vector<std::string> advertiser_names() const;
  std::vector<std::string> scanner_names() const;

  // Every advertising interval in the catalog (3 Android + 9 iOS), in
  // catalog order.
  std::vector<micros_t> all_advertising_intervals_us() const;

  struct Combination {
    std::string name;
    AdvertiserConfig advertiser;
    ScannerConfig scanner;
  };
  // The 3x3 Android advertise-mode x scan-mode combinations.
  std::vector<Combination> android_combinations() const;

  std::string to_json_string(int indent = 2) const;
  static PresetCatalog from_json_string(const std::string& text);

 private:
  std::vector<ModePreset> entries_;
};

// Builds the shipped catalog and cross-checks every entry against the known
// constants. Throws std::logic_error if a value went out of sync.
PresetCatalog validate_preset_catalog();

}  // namespace ndsim
