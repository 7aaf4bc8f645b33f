#include "ndsim/presets.hpp"

#include <stdexcept>

#include "json.hpp"

namespace ndsim {

namespace {

using nlohmann::json;

struct AndroidScanMode {
  const char* name;
  micros_t window_us;
  micros_t interval_us;
};

struct AndroidAdvMode {
  const char* name;
  micros_t interval_us;
};

constexpr AndroidAdvMode kAndroidAdvModes[] = {
    {"ADVERTISE_MODE_LOW_LATENCY", 100'000},
    {"ADVERTISE_MODE_BALANCED", 250'000},
    {"ADVERTISE_MODE_LOW_POWER", 1'000'000},
};

constexpr AndroidScanMode kAndroidScanModes[] = {
    {"SCAN_MODE_LOW_POWER", 512'000, 5'120'000},
    {"SCAN_MODE_BALANCED", 1'024'000, 4'096'000},
    {"SCAN_MODE_LOW_LATENCY", 4'096'000, 4'096'000},
};

json advertiser_to_json(const AdvertiserConfig& a) {
  return json{{"interval_us", a.interval_us},
              {"random_delay_max_us", a.random_delay_max_us},
              {"packet_bytes", a.packet_bytes},
              {"channels", a.channels},
              {"inter_beacon_gap_us", a.inter_beacon_gap_us},
              {"mode", a.mode == RadioMode::kBle ? "ble" : "generic"}};
}

AdvertiserConfig advertiser_from_json(const json& j) {
  AdvertiserConfig a;
  a.interval_us = j.at("interval_us").get<micros_t>();
  a.random_delay_max_us = j.at("random_delay_max_us").get<micros_t>();
  a.packet_bytes = j.at("packet_bytes").get<int>();
  a.channels = j.at("channels").get<std::vector<channel_t>>();
  a.inter_beacon_gap_us = j.at("inter_beacon_gap_us").get<micros_t>();
  a.mode = j.at("mode").get<std::string>() == "ble" ? RadioMode::kBle : RadioMode::kGeneric;
  a.validate();
  return a;
}

json scanner_to_json(const ScannerConfig& s) {
  return json{{"scan_interval_us", s.scan_interval_us},
              {"scan_window_us", s.scan_window_us},
              {"channel_rotation", s.channel_rotation}};
}

ScannerConfig scanner_from_json(const json& j) {
  ScannerConfig s;
  s.scan_interval_us = j.at("scan_interval_us").get<micros_t>();
  s.scan_window_us = j.at("scan_window_us").get<micros_t>();
  s.channel_rotation = j.at("channel_rotation").get<std::vector<channel_t>>();
  s.validate();
  return s;
}

}  // namespace

const ModePreset& PresetCatalog::lookup(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw std::out_of_range("unknown preset: " + name);
}

const AdvertiserConfig& PresetCatalog::advertiser(const std::string& name) const {
  const auto& e = lookup(name);
  if (!e.advertiser) throw std::out_of_range("preset has no advertiser side: " + name);
  return *e.advertiser;
}

const ScannerConfig& PresetCatalog::scanner(const std::string& name) const {
  const auto& e = lookup(name);
  if (!e.scanner) throw std::out_of_range("preset has no scanner side: " + name);
  return *e.scanner;
}

bool PresetCatalog::contains(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

void PresetCatalog::add(ModePreset preset) {
  if (contains(preset.name)) throw std::invalid_argument("duplicate preset: " + preset.name);
  if (!preset.advertiser && !preset.scanner)
    throw std::invalid_argument("preset needs an advertiser or scanner side: " + preset.name);
  entries_.push_back(std::move(preset));
}

std::vector<std::string> PresetCatalog::advertiser_names() const {
  std::vector<std::string> names;
  for (const auto& e : entries_)
    if (e.advertiser) names.push_back(e.name);
  return names;
}

std::vector<std::string> PresetCatalog::scanner_names() const {
  std::vector<std::string> names;
  for (const auto& e : entries_)
    if (e.scanner) names.push_back(e.name);
  return names;
}

std::vector<micros_t> PresetCatalog::all_advertising_intervals_us() const {
  std::vector<micros_t> out;
  for (const auto& e : entries_)
    if (e.advertiser) out.push_back(e.advertiser->interval_us);
  return out;
}

std::vector<PresetCatalog::Combination> PresetCatalog::android_combinations() const {
  std::vector<Combination> out;
  for (const auto& adv : kAndroidAdvModes)
    for (const auto& scan : kAndroidScanModes)
      out.push_back({std::string(adv.name) + "+" + scan.name, advertiser(adv.name),
                     scanner(scan.name)});
  return out;
}

std::string PresetCatalog::to_json_string(int indent) const {
  json entries = json::array();
  for (const auto& e : entries_) {
    json je{{"name", e.name}};
    if (e.advertiser) je["advertiser"] = advertiser_to_json(*e.advertiser);
    if (e.scanner) je["scanner"] = scanner_to_json(*e.scanner);
    entries.push_back(std::move(je));
  }
  return json{{"presets", entries}}.dump(indent);
}

PresetCatalog PresetCatalog::from_json_string(const std::string& text) {
  PresetCatalog catalog;
  const json root = json::parse(text);
  for (const auto& je : root.at("presets")) {
    ModePreset p;
    p.name = je.at("name").get<std::string>();
    if (je.contains("advertiser")) p.advertiser = advertiser_from_json(je.at("advertiser"));
    if (je.contains("scanner")) p.scanner = scanner_from_json(je.at("scanner"));
    catalog.add(std::move(p));
  }
  return catalog;
}

PresetCatalog validate_preset_catalog() {
  PresetCatalog catalog;
  for (const auto& m : kAndroidAdvModes)
    catalog.add({m.name, AdvertiserConfig::ble(m.interval_us), std::nullopt});
  for (const auto& m : kAndroidScanModes)
    catalog.add({m.name, std::nullopt, ScannerConfig::ble(m.window_us, m.interval_us)});
  for (std::size_t i = 0; i < kIosAdvertisingIntervalsUs.size(); ++i)
    catalog.add({"IOS_" + std::to_string(i + 1),
                 AdvertiserConfig::ble(kIosAdvertisingIntervalsUs[i]), std::nullopt});

  // Cross-check the shipped values; a mismatch means the tables drifted.
  auto expect = [](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("preset catalog check failed: ") + what);
  };
  expect(catalog.advertiser("ADVERTISE_MODE_LOW_LATENCY").interval_us == 100'000,
         "ADVERTISE_MODE_LOW_LATENCY");
  expect(catalog.advertiser("ADVERTISE_MODE_BALANCED").interval_us == 250'000,
         "ADVERTISE_MODE_BALANCED");
  expect(catalog.advertiser("ADVERTISE_MODE_LOW_POWER").interval_us == 1'000'000,
         "ADVERTISE_MODE_LOW_POWER");
  expect(catalog.scanner("SCAN_MODE_LOW_POWER").scan_window_us == 512'000 &&
             catalog.scanner("SCAN_MODE_LOW_POWER").scan_interval_us == 5'120'000,
         "SCAN_MODE_LOW_POWER");
  expect(catalog.scanner("SCAN_MODE_BALANCED").scan_window_us == 1'024'000 &&
             catalog.scanner("SCAN_MODE_BALANCED").scan_interval_us == 4'096'000,
         "SCAN_MODE_BALANCED");
  expect(catalog.scanner("SCAN_MODE_LOW_LATENCY").scan_window_us == 4'096'000 &&
             catalog.scanner("SCAN_MODE_LOW_LATENCY").scan_interval_us == 4'096'000,
         "SCAN_MODE_LOW_LATENCY");
  expect(catalog.advertiser("IOS_8").interval_us == 1'022'500, "IOS_8");
  expect(catalog.android_combinations().size() == 9, "android combinations");
  expect(catalog.all_advertising_intervals_us().size() == 12, "advertising interval count");
  return catalog;
}

}  // namespace ndsim
