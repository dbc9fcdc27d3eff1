#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "groom/cost_algebra.hpp"
#include "groom/multilayer.hpp"
#include "groom/topology.hpp"

namespace groom {

struct SearchOptions {
  /// Per-vertex label cap. Zero disables the cap.
  std::size_t label_cap = 64;
  double port_rate_gbps = 400.0;
  std::size_t guard_slots = 0;
};

struct SearchResult {
  std::vector<PathLabel> labels;  // complete, mutually non-dominated
  std::size_t cap_hits = 0;       // labels evicted by the cap
  std::size_t labels_created = 0;
};

/// Dominance-pruned label-correcting search from Router(src) to Router(dst).
///
/// Labels carry one mode per open segment, so a transmit edge fans out into
/// one extension per mode. Two labels at an intermediate vertex are compared
/// only when their futures coincide: same open module and mode, same
/// regeneration status, the pruning label's open segment already has a fiber
/// whenever the pruned one's does, and the pruning label's visited nodes are
/// a subset of the pruned one's. At Router(dst) every complete label is compared with
/// every other. Without cap hits the returned set is exactly the Pareto front
/// of all valid node-simple multilayer paths.
SearchResult nondominated_paths(const MultilayerGraph& graph, NodeIndex src, NodeIndex dst, double demand_gbps,
                                const SearchOptions& options = {});

/// Argmin of the objective; ties go to the lexicographically smallest vertex
/// sequence, then fewer occupied slots, then the edge sequence.
std::optional<PathLabel> select_winner(const std::vector<PathLabel>& labels, Objective objective);

struct PhysicalPath {
  std::vector<NodeIndex> nodes;
  double length_km = 0.0;
  friend bool operator==(const PhysicalPath&, const PhysicalPath&) = default;
};

/// Up to k loopless paths in non-decreasing length, ties broken by node
/// index sequence (Yen's deviation scheme). Parallel links collapse onto the
/// shortest one.
std::vector<PhysicalPath> k_shortest_paths(const Topology& topology, NodeIndex src, NodeIndex dst, std::size_t k);

}  // namespace groom
