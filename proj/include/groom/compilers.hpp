#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groom/cost_algebra.hpp"
#include "groom/intent_dag.hpp"
#include "groom/multilayer.hpp"
#include "groom/network_state.hpp"

namespace groom {

struct CompilerKind {
  enum class Strategy { Sap, Jml, Ldjml };
  Strategy strategy = Strategy::Jml;
  std::size_t k = 3;  // SAP only

  static CompilerKind sap(std::size_t k = 3) { return {Strategy::Sap, k}; }
  static CompilerKind jml() { return {Strategy::Jml, 0}; }
  static CompilerKind ldjml() { return {Strategy::Ldjml, 0}; }

  friend bool operator==(const CompilerKind&, const CompilerKind&) = default;
};

std::string_view to_string(CompilerKind::Strategy s);
std::string to_string(const CompilerKind& kind);
/// Accepts "sap", "sap:K", "jml", "ldjml".
CompilerKind parse_compiler_kind(std::string_view text);

struct CompileOptions {
  std::size_t label_cap = 64;
  /// Most channels one demand may be split into before it is blocked.
  std::size_t max_splits = 16;
  /// Run verify_dag after every installed compilation and throw on findings.
  bool check_invariants = false;
};

struct GroomingEdge {
  IntentId parent;
  IntentId lightpath;
  double rate_gbps = 0.0;
  friend bool operator==(const GroomingEdge&, const GroomingEdge&) = default;
};

/// Where one sub-demand went: the new segments with their spectrum, in path
/// order, and the winner label for the multilayer compilers.
struct PlacedRoute {
  double rate_gbps = 0.0;
  std::vector<IntentId> lightpaths;
  std::vector<std::pair<IntentId, SlotInterval>> new_lightpaths;
  std::optional<PathLabel> winner;
  double length_km = 0.0;
};

struct CompilationOutcome {
  LifecycleState status = LifecycleState::Blocked;
  std::vector<IntentId> created;
  std::vector<GroomingEdge> grooming_edges;
  std::vector<PlacedRoute> routes;
  std::size_t cap_hits = 0;
  std::string reason;  // why a demand was blocked

  std::size_t new_lightpath_count() const;
  /// Longest route, in km; the latency-relevant length of the demand.
  double length_km() const;
};

/// Compiles one Uncompiled Connectivity intent. Either installs a full
/// decomposition or marks it Blocked leaving every other intent and all
/// resources untouched.
CompilationOutcome compile(const CompilerKind& kind, IntentId intent, NetworkState& state, IntentDag& dag,
                           const CompileOptions& options = {});

/// Removes a user intent and every descendant no other intent still needs,
/// returning the released slots, modules and ports to the state. Shared
/// lightpaths stay up with their load reduced.
void teardown_user_intent(IntentId root, NetworkState& state, IntentDag& dag);

/// Records every mutation so a failed multi-step compilation can be undone.
class MutationJournal {
 public:
  MutationJournal(NetworkState& state, IntentDag& dag);

  IntentId add_child(IntentId parent, IntentKind kind);
  void add_grooming_edge(IntentId parent, IntentId lightpath, double rate_gbps);
  void set_state(IntentId id, LifecycleState next);
  void append_route(IntentId root, RouteHops route);
  void reserve_slots(FiberId f, SlotInterval range);
  void reserve_transmodule(NodeIndex node, std::size_t module_type);
  void reserve_port(NodeIndex node);

  /// Undoes every recorded mutation, newest first.
  void rollback();
  std::size_t size() const noexcept { return entries_.size(); }
  IntentDag& dag_ref() noexcept { return dag_; }
  /// Takes over another journal's entries; `other` ends up empty.
  void absorb(MutationJournal& other);

 private:
  enum class Op { Child, Grooming, State, Route, Slots, Transmodule, Port };
  struct Entry {
    Op op = Op::Child;
    IntentId id{};
    IntentId target{};
    double rate_gbps = 0.0;
    LifecycleState previous = LifecycleState::Uncompiled;
    FiberId fiber{};
    SlotInterval range{};
    NodeIndex node = 0;
    std::size_t module_type = 0;
  };

  NetworkState& state_;
  IntentDag& dag_;
  std::uint64_t start_index_;
  std::vector<Entry> entries_;
};

/// Turns a complete winner label into intents and reservations: one
/// Lightpath subtree per new segment (using `intervals` in segment order)
/// and one grooming edge per established lightpath it rides. Returns the
/// lightpaths of the route in path order.
std::vector<IntentId> decompose_to_intents(const PathLabel& winner, const MultilayerGraph& graph,
                                           const std::vector<SlotInterval>& intervals, IntentId user,
                                           double rate_gbps, MutationJournal& journal, CompilationOutcome& outcome);

}  // namespace groom
