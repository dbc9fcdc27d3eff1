#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "groom/catalog.hpp"
#include "groom/network_state.hpp"
#include "groom/topology.hpp"

namespace groom {

/// Unified index of an intent. Allocated monotonically by one IntentDag.
struct IntentId {
  std::uint64_t value = 0;
  friend auto operator<=>(const IntentId&, const IntentId&) = default;
};

enum class LifecycleState { Uncompiled, Compiled, Installed, Blocked };

std::string_view to_string(LifecycleState s);

/// One end-to-end route of a user intent: the lightpaths it rides, in order.
/// A demand larger than one channel is carried by several routes.
struct RouteHops {
  double rate_gbps = 0.0;
  std::vector<IntentId> lightpaths;
  friend bool operator==(const RouteHops&, const RouteHops&) = default;
};

struct ConnectivityIntent {
  NodeIndex source = 0;
  NodeIndex destination = 0;
  double rate_gbps = 0.0;
  std::vector<RouteHops> routes;
  friend bool operator==(const ConnectivityIntent&, const ConnectivityIntent&) = default;
};

struct LightpathIntent {
  std::vector<NodeIndex> nodes;
  std::size_t module_type = 0;
  ModeTuple mode;
  double length_km = 0.0;
  double capacity_gbps = 0.0;
  double groomed_load_gbps = 0.0;
  friend bool operator==(const LightpathIntent&, const LightpathIntent&) = default;
};

struct SpectrumIntent {
  SlotInterval interval;
  std::vector<FiberId> fibers;
  friend bool operator==(const SpectrumIntent&, const SpectrumIntent&) = default;
};

struct NodeTransmoduleIntent {
  NodeIndex node = 0;
  std::size_t module_type = 0;
  friend bool operator==(const NodeTransmoduleIntent&, const NodeTransmoduleIntent&) = default;
};

struct NodeRouterPortIntent {
  NodeIndex node = 0;
  friend bool operator==(const NodeRouterPortIntent&, const NodeRouterPortIntent&) = default;
};

struct NodeSpectrumIntent {
  NodeIndex node = 0;
  FiberId fiber;
  SlotInterval interval;
  friend bool operator==(const NodeSpectrumIntent&, const NodeSpectrumIntent&) = default;
};

using IntentKind = std::variant<ConnectivityIntent, LightpathIntent, SpectrumIntent, NodeTransmoduleIntent,
                                NodeRouterPortIntent, NodeSpectrumIntent>;

std::string_view kind_name(const IntentKind& kind);

struct Intent {
  IntentId id;
  IntentKind kind;
  LifecycleState state = LifecycleState::Uncompiled;

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(kind);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(kind);
  }
  friend bool operator==(const Intent&, const Intent&) = default;
};

/// Parent link of an intent. `rate_gbps` is the share of a Lightpath's load
/// contributed by that parent; zero for every other child kind.
struct ParentLink {
  IntentId parent;
  double rate_gbps = 0.0;
  friend bool operator==(const ParentLink&, const ParentLink&) = default;
};

/// The framework-wide intent DAG. Connectivity intents are roots; every
/// other intent has at least one parent. Lightpaths may have several parents
/// (grooming).
class IntentDag {
 public:
  IntentId add_user_intent(NodeIndex source, NodeIndex destination, double rate_gbps);
  IntentId add_child(IntentId parent, IntentKind kind);
  void add_grooming_edge(IntentId parent, IntentId lightpath, double rate_gbps);
  double residual_capacity(IntentId lightpath) const;

  /// Removes a root and every descendant left without parents, children
  /// before parents. Shared lightpaths survive with reduced load. Returns the
  /// removed non-root intents in removal order.
  std::vector<Intent> remove_user_intent(IntentId root);

  void set_state(IntentId id, LifecycleState next);
  void append_route(IntentId root, RouteHops route);

  bool contains(IntentId id) const { return nodes_.count(id) != 0; }
  const Intent& at(IntentId id) const;
  const std::vector<ParentLink>& parents(IntentId id) const;
  const std::vector<IntentId>& children(IntentId id) const;
  std::size_t size() const noexcept { return nodes_.size(); }
  std::uint64_t next_index() const noexcept { return next_; }
  std::vector<IntentId> ids() const;
  std::vector<IntentId> roots() const;

  /// True if `descendant` is reachable from `ancestor` (or equal to it).
  bool reaches(IntentId ancestor, IntentId descendant) const;

  /// Raw mutations without validation. They exist for loading dumps, fault
  /// injection and transaction rollback; public operations never call them.
  void insert_unchecked(Intent intent);
  void add_edge_unchecked(IntentId parent, IntentId child, double rate_gbps = 0.0);
  void erase_leaf_unchecked(IntentId id);
  void remove_grooming_unchecked(IntentId parent, IntentId lightpath, double rate_gbps);
  void force_state(IntentId id, LifecycleState state);
  void pop_route_unchecked(IntentId root);
  void set_next_index_unchecked(std::uint64_t next) { next_ = next; }

  friend bool operator==(const IntentDag&, const IntentDag&) = default;

 private:
  struct Entry {
    Intent intent;
    std::vector<ParentLink> parents;
    std::vector<IntentId> children;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Entry& entry(IntentId id);
  const Entry& entry(IntentId id) const;
  IntentId allocate(IntentKind kind);
  void unlink(IntentId parent, IntentId child);
  void release_subtree(IntentId id, std::vector<Intent>& out);

  std::map<IntentId, Entry> nodes_;
  std::uint64_t next_ = 0;
};

/// Consistency audit of the DAG against the resource state. An empty result
/// means: acyclic, parent-count and capacity rules hold, decompositions are
/// well-formed, and installed low-level intents reconcile exactly with the
/// occupied slots and equipment counters.
std::vector<std::string> verify_dag(const IntentDag& dag, const NetworkState& state);

/// Kahn's algorithm over all edges; false iff a cycle exists.
bool is_acyclic(const IntentDag& dag);

nlohmann::json dag_to_json(const IntentDag& dag, const NetworkState& state);
IntentDag dag_from_json(const nlohmann::json& j, const NetworkState& state);

}  // namespace groom
