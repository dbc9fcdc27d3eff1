#include "groom/catalog.hpp"

#include <algorithm>
#include <fstream>

#include "groom/errors.hpp"

namespace groom {

double Catalog::max_rate_gbps() const {
  double best = 0.0;
  for (const auto& m : modules) {
    for (const auto& mode : m.modes) best = std::max(best, mode.rate_gbps);
  }
  return best;
}

std::optional<std::size_t> Catalog::find_module(const std::string& name) const {
  for (std::size_t i = 0; i < modules.size(); ++i) {
    if (modules[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

// A mode is redundant when another one is at least as fast, reaches at least
// as far and needs no more slots, and is strictly better somewhere.
bool mode_dominates(const ModeTuple& a, const ModeTuple& b) {
  const bool weak = a.rate_gbps >= b.rate_gbps && a.reach_km >= b.reach_km && a.slots <= b.slots;
  const bool strict = a.rate_gbps > b.rate_gbps || a.reach_km > b.reach_km || a.slots < b.slots;
  return weak && strict;
}

}  // namespace

void Catalog::validate() const {
  if (modules.empty()) throw ParseError(0, "catalog: no module types");
  if (slots_per_fiber == 0) throw ParseError(0, "catalog: slots_per_fiber must be positive");
  if (!(router_port_rate_gbps > 0.0)) throw ParseError(0, "catalog: router_port_rate must be positive");
  if (router_port_cost < 0.0) throw ParseError(0, "catalog: router_port_cost must be non-negative");
  if (router_ports_per_node && *router_ports_per_node < 0) {
    throw ParseError(0, "catalog: router_ports_per_node must be non-negative");
  }
  for (std::size_t i = 0; i < modules.size(); ++i) {
    const auto& m = modules[i];
    if (m.name.empty()) throw ParseError(0, "catalog: module type without a name");
    for (std::size_t j = 0; j < i; ++j) {
      if (modules[j].name == m.name) throw ParseError(0, "catalog: duplicate module type " + m.name);
    }
    if (m.cost < 0.0) throw ParseError(0, "catalog: module " + m.name + " has negative cost");
    if (m.modes.empty()) throw ParseError(0, "catalog: module " + m.name + " has no modes");
    if (m.per_node && *m.per_node < 0) throw ParseError(0, "catalog: module " + m.name + " negative count");
    for (const auto& mode : m.modes) {
      if (!(mode.rate_gbps > 0.0) || !(mode.reach_km > 0.0) || mode.slots < 1) {
        throw ParseError(0, "catalog: module " + m.name + " has a mode with non-positive rate/reach/slots");
      }
      if (static_cast<std::size_t>(mode.slots) + guard_band_slots > slots_per_fiber) {
        throw ParseError(0, "catalog: module " + m.name + " mode wider than the fiber grid");
      }
    }
    for (const auto& a : m.modes) {
      for (const auto& b : m.modes) {
        if (mode_dominates(a, b)) {
          throw ParseError(0, "catalog: module " + m.name + " lists a mode dominated by another");
        }
      }
    }
  }
}

Catalog default_catalog() {
  Catalog c;
  c.modules.push_back({"default", 3.0, {{100.0, 3000.0, 4}, {200.0, 1500.0, 6}, {400.0, 600.0, 8}}, std::nullopt});
  c.router_port_cost = 1.0;
  c.router_port_rate_gbps = 400.0;
  c.slots_per_fiber = 320;
  c.guard_band_slots = 0;
  return c;
}

namespace {

std::optional<int> optional_count(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<int>();
}

}  // namespace

Catalog catalog_from_json(const nlohmann::json& j) {
  try {
    Catalog c;
    c.router_port_cost = j.at("router_port_cost").get<double>();
    c.router_port_rate_gbps = j.at("router_port_rate_gbps").get<double>();
    c.router_ports_per_node = optional_count(j, "router_ports_per_node");
    c.slots_per_fiber = j.value("slots_per_fiber", std::size_t{320});
    c.guard_band_slots = j.value("guard_band_slots", std::size_t{0});
    for (const auto& jm : j.at("module_types")) {
      TransmissionModuleType m;
      m.name = jm.at("name").get<std::string>();
      m.cost = jm.at("cost").get<double>();
      m.per_node = optional_count(jm, "per_node");
      for (const auto& jmode : jm.at("modes")) {
        m.modes.push_back({jmode.at("rate_gbps").get<double>(), jmode.at("reach_km").get<double>(),
                           jmode.at("slots").get<int>()});
      }
      c.modules.push_back(std::move(m));
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("catalog: ") + e.what());
  }
}

nlohmann::json catalog_to_json(const Catalog& c) {
  nlohmann::json j;
  j["slots_per_fiber"] = c.slots_per_fiber;
  j["guard_band_slots"] = c.guard_band_slots;
  j["router_port_cost"] = c.router_port_cost;
  j["router_port_rate_gbps"] = c.router_port_rate_gbps;
  j["router_ports_per_node"] = c.router_ports_per_node ? nlohmann::json(*c.router_ports_per_node) : nlohmann::json();
  auto& mods = j["module_types"] = nlohmann::json::array();
  for (const auto& m : c.modules) {
    nlohmann::json jm;
    jm["name"] = m.name;
    jm["cost"] = m.cost;
    jm["per_node"] = m.per_node ? nlohmann::json(*m.per_node) : nlohmann::json();
    auto& modes = jm["modes"] = nlohmann::json::array();
    for (const auto& mode : m.modes) {
      modes.push_back({{"rate_gbps", mode.rate_gbps}, {"reach_km", mode.reach_km}, {"slots", mode.slots}});
    }
    mods.push_back(std::move(jm));
  }
  return j;
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open catalog file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "catalog " + path + ": " + e.what());
  }
  return catalog_from_json(j);
}

}  // namespace groom
