#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "groom/catalog.hpp"
#include "groom/slot_mask.hpp"
#include "groom/topology.hpp"

namespace groom {

/// Contiguous run of spectrum slots [start, start + length).
struct SlotInterval {
  std::size_t start = 0;
  std::size_t length = 0;

  std::size_t end() const noexcept { return start + length; }
  friend auto operator<=>(const SlotInterval&, const SlotInterval&) = default;
};

/// Counted equipment pool. An absent capacity means unlimited.
struct Pool {
  std::optional<int> capacity;
  int in_use = 0;

  bool can_take(int n = 1) const noexcept { return !capacity || *capacity - in_use >= n; }
  std::optional<int> remaining() const noexcept {
    return capacity ? std::optional<int>(*capacity - in_use) : std::nullopt;
  }
  friend bool operator==(const Pool&, const Pool&) = default;
};

struct NodeEquipment {
  std::vector<Pool> transmodules;  // indexed by catalog module type
  Pool router_ports;
  friend bool operator==(const NodeEquipment&, const NodeEquipment&) = default;
};

/// Topology plus every mutable resource: per-fiber slot availability and
/// per-node equipment pools. Single owner, no internal synchronization.
class NetworkState {
 public:
  NetworkState(Topology topology, Catalog catalog);

  const Topology& topology() const noexcept { return topology_; }
  const Catalog& catalog() const noexcept { return catalog_; }
  std::size_t slots_per_fiber() const noexcept { return catalog_.slots_per_fiber; }

  /// Free-slot mask of a fiber (bit set = free).
  const SlotMask& availability(FiberId f) const { return spectrum_.at(f.index()); }
  const NodeEquipment& equipment(NodeIndex n) const { return equipment_.at(n); }

  void reserve_slots(FiberId f, SlotInterval range);
  void release_slots(FiberId f, SlotInterval range);
  void reserve_transmodule(NodeIndex node, std::size_t module_type);
  void release_transmodule(NodeIndex node, std::size_t module_type);
  void reserve_port(NodeIndex node);
  void release_port(NodeIndex node);

  std::size_t occupied_slot_count() const;

  /// Flips one slot without bookkeeping checks. For fault-injection only.
  void corrupt_slot_for_testing(FiberId f, std::size_t slot);

  friend bool operator==(const NetworkState&, const NetworkState&) = default;

 private:
  void check_range(FiberId f, SlotInterval range) const;

  Topology topology_;
  Catalog catalog_;
  std::vector<SlotMask> spectrum_;
  std::vector<NodeEquipment> equipment_;

  friend nlohmann::json state_to_json(const NetworkState& state);
  friend NetworkState state_from_json(const nlohmann::json& j);
};

/// State dump: topology, catalog, per-fiber occupancy strings and pool usage.
nlohmann::json state_to_json(const NetworkState& state);
NetworkState state_from_json(const nlohmann::json& j);

nlohmann::json topology_to_json(const Topology& topology);
Topology topology_from_json(const nlohmann::json& j);

}  // namespace groom
