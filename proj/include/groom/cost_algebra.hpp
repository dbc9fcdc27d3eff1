#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "groom/catalog.hpp"
#include "groom/intent_dag.hpp"
#include "groom/multilayer.hpp"
#include "groom/slot_mask.hpp"

namespace groom {

struct ChosenMode {
  std::size_t module_type = 0;
  ModeTuple mode;
  friend bool operator==(const ChosenMode&, const ChosenMode&) = default;
};

/// A transparent optical segment between two routers: becomes one lightpath.
struct Segment {
  std::size_t module_type = 0;
  ModeTuple mode;
  std::vector<NodeIndex> nodes;
  std::vector<FiberId> fibers;
  double length_km = 0.0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Path cost vector plus the bookkeeping needed to extend it and to turn it
/// into intents once it wins.
struct PathLabel {
  VertexIndex vertex = 0;

  double distance_km = 0.0;  // since the last regeneration
  double module_cost = 0.0;
  double port_cost = 0.0;
  std::vector<ModeTuple> open_modes;  // mode of the open segment; empty when closed
  SlotMask free_slots;                // slots free on every fiber of the open segment
  std::vector<IntentId> lightpaths;   // established lightpaths ridden, in order
  double length_km = 0.0;             // total physical length
  std::vector<ChosenMode> chosen;     // one per closed segment
  bool uses_virtual = false;

  std::vector<EdgeIndex> edges;
  std::vector<VertexIndex> vertices;
  std::vector<Segment> segments;

  std::optional<std::size_t> open_module;
  Segment open_segment;
  SlotMask visited_nodes;
  bool after_receive = false;

  double cost() const noexcept { return module_cost + port_cost; }
  bool has_open_segment() const noexcept { return open_module.has_value(); }
  /// Highest committed mode rate (closed segments and the open one); 0 when
  /// the path only rides established lightpaths.
  double max_rate() const noexcept;
  /// Number of slot-fiber pairs the new segments would occupy.
  std::size_t slot_usage() const noexcept;

  friend bool operator==(const PathLabel&, const PathLabel&) = default;
};

PathLabel initial_label(VertexIndex source_router, std::size_t node_count, std::size_t slots_per_fiber);

struct ExtendContext {
  double demand_gbps = 0.0;
  double port_rate_gbps = 0.0;
  std::size_t guard_slots = 0;
};

/// Appends one multigraph edge to a label. Returns nullopt when the result
/// violates a rate, reach, spectrum, module-matching, equipment or
/// node-simplicity constraint. `mode_index` picks the mode opened by a
/// transmit edge and is ignored for other edge types. Structural misuse
/// throws ContractViolation.
std::optional<PathLabel> extend_label(const PathLabel& label, const MLEdge& edge, EdgeIndex edge_index,
                                      const ExtendContext& ctx, std::size_t mode_index = 0);

/// Strict dominance: a is no worse than b on distance, C+P cost, virtual
/// flag, max rate and free slots, and strictly better on at least one.
bool dominates(const PathLabel& a, const PathLabel& b);

enum class Objective { Jml, Ldjml };

/// C + P of a complete label.
double objective_jml(const PathLabel& label);
/// (L, C + P) of a complete label, compared lexicographically.
std::pair<double, double> objective_ldjml(const PathLabel& label);

}  // namespace groom
