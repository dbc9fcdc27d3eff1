#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "groom/catalog.hpp"
#include "groom/intent_dag.hpp"
#include "groom/network_state.hpp"
#include "groom/slot_mask.hpp"

namespace groom {

enum class Layer { Router = 0, Oxc = 1 };

enum class EdgeType { Virtual, Optical, OpticalToVirtual, VirtualToOptical };

std::string_view to_string(EdgeType t);

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

/// Two vertices per topology node: router at 2n, OXC at 2n+1.
constexpr VertexIndex vertex_of(NodeIndex node, Layer layer) noexcept {
  return node * 2 + static_cast<std::size_t>(layer);
}
constexpr NodeIndex node_of(VertexIndex v) noexcept { return v / 2; }
constexpr Layer layer_of(VertexIndex v) noexcept { return static_cast<Layer>(v % 2); }

/// Per-edge attributes: distance since regeneration (D), module cost (C),
/// port cost (P), module modes (H), virtual flag (F), free slots (W), edge
/// type (T), established lightpath (I) and physical length (L).
struct EdgeCostVector {
  double distance_km = 0.0;
  double module_cost = 0.0;
  double port_cost = 0.0;
  std::vector<ModeTuple> modes;
  bool is_virtual = false;
  SlotMask free_slots;
  EdgeType type = EdgeType::Optical;
  std::optional<IntentId> lightpath;
  double length_km = 0.0;
  friend bool operator==(const EdgeCostVector&, const EdgeCostVector&) = default;
};

struct MLEdge {
  VertexIndex from = 0;
  VertexIndex to = 0;
  EdgeCostVector cost;
  std::optional<FiberId> fiber;           // Optical edges
  std::optional<std::size_t> module_type;  // interlayer edges
  std::optional<int> modules_left;         // interlayer edges; nullopt = unlimited
  std::optional<int> ports_left;           // interlayer edges; nullopt = unlimited
  friend bool operator==(const MLEdge&, const MLEdge&) = default;
};

/// Directed multilayer multigraph snapshot for one compilation request.
class MultilayerGraph {
 public:
  MultilayerGraph(std::size_t node_count, std::size_t slots_per_fiber);

  EdgeIndex add_edge(MLEdge edge);

  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t node_count() const noexcept { return out_.size() / 2; }
  std::size_t slots_per_fiber() const noexcept { return slots_; }
  const std::vector<MLEdge>& edges() const noexcept { return edges_; }
  const MLEdge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<EdgeIndex>& out_edges(VertexIndex v) const { return out_.at(v); }
  std::size_t count(EdgeType t) const;

  friend bool operator==(const MultilayerGraph&, const MultilayerGraph&) = default;

 private:
  std::size_t slots_;
  std::vector<MLEdge> edges_;
  std::vector<std::vector<EdgeIndex>> out_;
};

/// Snapshot of the current resources. Virtual edges exist only for installed
/// lightpaths whose residual capacity can take `demand_gbps`.
MultilayerGraph build_multilayer_graph(const NetworkState& state, const IntentDag& dag, double demand_gbps);

nlohmann::json multigraph_to_json(const MultilayerGraph& graph, const NetworkState& state);

}  // namespace groom
