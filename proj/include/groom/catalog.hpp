#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace groom {

/// One operating mode of a transmission module.
struct ModeTuple {
  double rate_gbps = 0.0;
  double reach_km = 0.0;
  int slots = 0;
  friend bool operator==(const ModeTuple&, const ModeTuple&) = default;
};

struct TransmissionModuleType {
  std::string name;
  double cost = 0.0;
  std::vector<ModeTuple> modes;
  /// Modules of this type per node; nullopt means counted but not capped.
  std::optional<int> per_node;
  friend bool operator==(const TransmissionModuleType&, const TransmissionModuleType&) = default;
};

/// Equipment and spectrum parameters shared by every node and fiber.
struct Catalog {
  std::vector<TransmissionModuleType> modules;
  double router_port_cost = 1.0;
  double router_port_rate_gbps = 400.0;
  std::optional<int> router_ports_per_node;
  std::size_t slots_per_fiber = 320;
  std::size_t guard_band_slots = 0;

  /// Highest mode rate over every module type.
  double max_rate_gbps() const;
  std::optional<std::size_t> find_module(const std::string& name) const;

  /// Throws ParseError describing the first problem found.
  void validate() const;

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

/// One module type (cost 3) with 100G/3000 km/4, 200G/1500 km/6 and
/// 400G/600 km/8 modes; router ports cost 1 and run at 400G; 320 slots.
Catalog default_catalog();

Catalog catalog_from_json(const nlohmann::json& j);
nlohmann::json catalog_to_json(const Catalog& c);
Catalog load_catalog_file(const std::string& path);

}  // namespace groom
