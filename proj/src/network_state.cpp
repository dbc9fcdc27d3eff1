#include "groom/network_state.hpp"

#include <string>

#include <fmt/format.h>

#include "groom/errors.hpp"

namespace groom {

NetworkState::NetworkState(Topology topology, Catalog catalog)
    : topology_(std::move(topology)), catalog_(std::move(catalog)) {
  catalog_.validate();
  spectrum_.assign(topology_.fiber_count(), SlotMask(catalog_.slots_per_fiber, true));
  NodeEquipment proto;
  for (const auto& m : catalog_.modules) proto.transmodules.push_back({m.per_node, 0});
  proto.router_ports = {catalog_.router_ports_per_node, 0};
  equipment_.assign(topology_.node_count(), proto);
}

void NetworkState::check_range(FiberId f, SlotInterval range) const {
  if (f.index() >= spectrum_.size()) throw ContractViolation("unknown fiber");
  if (range.length == 0 || range.end() > catalog_.slots_per_fiber) {
    throw ContractViolation(fmt::format("slot range [{},{}) outside the grid on {}", range.start, range.end(),
                                        topology_.fiber_label(f)));
  }
}

void NetworkState::reserve_slots(FiberId f, SlotInterval range) {
  check_range(f, range);
  auto& mask = spectrum_[f.index()];
  for (std::size_t s = range.start; s < range.end(); ++s) {
    if (!mask.test(s)) {
      throw ResourceConflict(fmt::format("slot {} on fiber {} is already occupied", s, topology_.fiber_label(f)));
    }
  }
  for (std::size_t s = range.start; s < range.end(); ++s) mask.reset(s);
}

void NetworkState::release_slots(FiberId f, SlotInterval range) {
  check_range(f, range);
  auto& mask = spectrum_[f.index()];
  for (std::size_t s = range.start; s < range.end(); ++s) {
    if (mask.test(s)) {
      throw BookkeepingError(fmt::format("slot {} on fiber {} is not reserved", s, topology_.fiber_label(f)));
    }
  }
  for (std::size_t s = range.start; s < range.end(); ++s) mask.set(s);
}

void NetworkState::reserve_transmodule(NodeIndex node, std::size_t module_type) {
  auto& pool = equipment_.at(node).transmodules.at(module_type);
  if (!pool.can_take()) {
    throw ResourceConflict(fmt::format("no {} transmission module left at {}", catalog_.modules[module_type].name,
                                       topology_.nodes()[node].name));
  }
  ++pool.in_use;
}

void NetworkState::release_transmodule(NodeIndex node, std::size_t module_type) {
  auto& pool = equipment_.at(node).transmodules.at(module_type);
  if (pool.in_use == 0) {
    throw BookkeepingError(fmt::format("no {} transmission module held at {}", catalog_.modules[module_type].name,
                                       topology_.nodes()[node].name));
  }
  --pool.in_use;
}

void NetworkState::reserve_port(NodeIndex node) {
  auto& pool = equipment_.at(node).router_ports;
  if (!pool.can_take()) throw ResourceConflict("no router port left at " + topology_.nodes()[node].name);
  ++pool.in_use;
}

void NetworkState::release_port(NodeIndex node) {
  auto& pool = equipment_.at(node).router_ports;
  if (pool.in_use == 0) throw BookkeepingError("no router port held at " + topology_.nodes()[node].name);
  --pool.in_use;
}

std::size_t NetworkState::occupied_slot_count() const {
  std::size_t n = 0;
  for (const auto& m : spectrum_) n += m.size() - m.count();
  return n;
}

void NetworkState::corrupt_slot_for_testing(FiberId f, std::size_t slot) {
  auto& mask = spectrum_.at(f.index());
  mask.set(slot, !mask.test(slot));
}

nlohmann::json topology_to_json(const Topology& topology) {
  nlohmann::json j;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (const auto& n : topology.nodes()) {
    nodes.push_back({{"name", n.name}, {"latitude", n.position.latitude}, {"longitude", n.position.longitude}});
  }
  auto& links = j["links"] = nlohmann::json::array();
  for (const auto& l : topology.links()) {
    links.push_back({{"name", l.name},
                     {"a", topology.nodes()[l.a].name},
                     {"b", topology.nodes()[l.b].name},
                     {"length_km", l.length_km}});
  }
  return j;
}

Topology topology_from_json(const nlohmann::json& j) {
  Topology t;
  for (const auto& n : j.at("nodes")) {
    t.add_node(n.at("name").get<std::string>(), {n.at("latitude").get<double>(), n.at("longitude").get<double>()});
  }
  for (const auto& l : j.at("links")) {
    t.add_link(l.at("name").get<std::string>(), t.node_index(l.at("a").get<std::string>()),
               t.node_index(l.at("b").get<std::string>()), l.at("length_km").get<double>());
  }
  return t;
}

nlohmann::json state_to_json(const NetworkState& state) {
  const auto& topo = state.topology_;
  nlohmann::json j;
  j["topology"] = topology_to_json(topo);
  j["catalog"] = catalog_to_json(state.catalog_);
  auto& fibers = j["fibers"] = nlohmann::json::array();
  for (std::size_t i = 0; i < state.spectrum_.size(); ++i) {
    const FiberId f = FiberId::from_index(i);
    // Dumped as occupancy: '1' = occupied.
    std::string occupied = state.spectrum_[i].to_string();
    for (auto& c : occupied) c = c == '1' ? '0' : '1';
    fibers.push_back({{"link", topo.links()[f.link].name},
                      {"from", topo.nodes()[topo.fiber_from(f)].name},
                      {"to", topo.nodes()[topo.fiber_to(f)].name},
                      {"occupied", occupied}});
  }
  auto& equipment = j["equipment"] = nlohmann::json::array();
  for (std::size_t n = 0; n < state.equipment_.size(); ++n) {
    nlohmann::json modules = nlohmann::json::object();
    for (std::size_t m = 0; m < state.catalog_.modules.size(); ++m) {
      modules[state.catalog_.modules[m].name] = state.equipment_[n].transmodules[m].in_use;
    }
    equipment.push_back({{"node", topo.nodes()[n].name},
                         {"ports_in_use", state.equipment_[n].router_ports.in_use},
                         {"modules_in_use", modules}});
  }
  return j;
}

NetworkState state_from_json(const nlohmann::json& j) {
  try {
    NetworkState state(topology_from_json(j.at("topology")), catalog_from_json(j.at("catalog")));
    const auto& topo = state.topology_;
    const auto& fibers = j.at("fibers");
    if (fibers.size() != state.spectrum_.size()) throw ParseError(0, "state dump: fiber count mismatch");
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      const FiberId f = FiberId::from_index(i);
      const auto& jf = fibers[i];
      if (jf.at("link").get<std::string>() != topo.links()[f.link].name ||
          jf.at("from").get<std::string>() != topo.nodes()[topo.fiber_from(f)].name) {
        throw ParseError(0, "state dump: fiber order mismatch at entry " + std::to_string(i));
      }
      std::string bits = jf.at("occupied").get<std::string>();
      if (bits.size() != state.slots_per_fiber()) throw ParseError(0, "state dump: wrong slot count");
      for (auto& c : bits) {
        if (c != '0' && c != '1') throw ParseError(0, "state dump: bad occupancy character");
        c = c == '1' ? '0' : '1';
      }
      state.spectrum_[i] = SlotMask::from_string(bits);
    }
    const auto& equipment = j.at("equipment");
    if (equipment.size() != state.equipment_.size()) throw ParseError(0, "state dump: node count mismatch");
    for (std::size_t n = 0; n < equipment.size(); ++n) {
      const auto& je = equipment[n];
      state.equipment_[n].router_ports.in_use = je.at("ports_in_use").get<int>();
      for (std::size_t m = 0; m < state.catalog_.modules.size(); ++m) {
        state.equipment_[n].transmodules[m].in_use =
            je.at("modules_in_use").at(state.catalog_.modules[m].name).get<int>();
      }
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("state dump: ") + e.what());
  } catch (const ContractViolation& e) {
    throw ParseError(0, std::string("state dump: ") + e.what());
  }
}

}  // namespace groom
