#include "groom/compilers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "groom/errors.hpp"
#include "groom/path_search.hpp"
#include "groom/spectrum.hpp"

namespace groom {

namespace {

constexpr double kRateTolerance = 1e-9;

}  // namespace

std::string_view to_string(CompilerKind::Strategy s) {
  switch (s) {
    case CompilerKind::Strategy::Sap: return "sap";
    case CompilerKind::Strategy::Jml: return "jml";
    case CompilerKind::Strategy::Ldjml: return "ldjml";
  }
  return "?";
}

std::string to_string(const CompilerKind& kind) {
  if (kind.strategy == CompilerKind::Strategy::Sap && kind.k != 3) return fmt::format("sap:{}", kind.k);
  return std::string(to_string(kind.strategy));
}

CompilerKind parse_compiler_kind(std::string_view text) {
  if (text == "jml") return CompilerKind::jml();
  if (text == "ldjml") return CompilerKind::ldjml();
  if (text == "sap") return CompilerKind::sap();
  if (text.starts_with("sap:")) {
    std::size_t k = 0;
    const auto digits = text.substr(4);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && k >= 1) return CompilerKind::sap(k);
  }
  throw ContractViolation(fmt::format("unknown compiler '{}'", text));
}

std::size_t CompilationOutcome::new_lightpath_count() const {
  std::size_t n = 0;
  for (const auto& r : routes) n += r.new_lightpaths.size();
  return n;
}

double CompilationOutcome::length_km() const {
  double km = 0.0;
  for (const auto& r : routes) km = std::max(km, r.length_km);
  return km;
}

MutationJournal::MutationJournal(NetworkState& state, IntentDag& dag)
    : state_(state), dag_(dag), start_index_(dag.next_index()) {}

IntentId MutationJournal::add_child(IntentId parent, IntentKind kind) {
  const IntentId id = dag_.add_child(parent, std::move(kind));
  entries_.push_back({Op::Child, id, parent});
  return id;
}

void MutationJournal::add_grooming_edge(IntentId parent, IntentId lightpath, double rate_gbps) {
  dag_.add_grooming_edge(parent, lightpath, rate_gbps);
  entries_.push_back({Op::Grooming, parent, lightpath, rate_gbps});
}

void MutationJournal::set_state(IntentId id, LifecycleState next) {
  const LifecycleState previous = dag_.at(id).state;
  dag_.set_state(id, next);
  Entry e{Op::State, id};
  e.previous = previous;
  entries_.push_back(e);
}

void MutationJournal::append_route(IntentId root, RouteHops route) {
  dag_.append_route(root, std::move(route));
  entries_.push_back({Op::Route, root});
}

void MutationJournal::reserve_slots(FiberId f, SlotInterval range) {
  state_.reserve_slots(f, range);
  Entry e{Op::Slots};
  e.fiber = f;
  e.range = range;
  entries_.push_back(e);
}

void MutationJournal::reserve_transmodule(NodeIndex node, std::size_t module_type) {
  state_.reserve_transmodule(node, module_type);
  Entry e{Op::Transmodule};
  e.node = node;
  e.module_type = module_type;
  entries_.push_back(e);
}

void MutationJournal::reserve_port(NodeIndex node) {
  state_.reserve_port(node);
  Entry e{Op::Port};
  e.node = node;
  entries_.push_back(e);
}

void MutationJournal::absorb(MutationJournal& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  other.entries_.clear();
}

void MutationJournal::rollback() {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    switch (it->op) {
      case Op::Child: dag_.erase_leaf_unchecked(it->id); break;
      case Op::Grooming: dag_.remove_grooming_unchecked(it->id, it->target, it->rate_gbps); break;
      case Op::State: dag_.force_state(it->id, it->previous); break;
      case Op::Route: dag_.pop_route_unchecked(it->id); break;
      case Op::Slots: state_.release_slots(it->fiber, it->range); break;
      case Op::Transmodule: state_.release_transmodule(it->node, it->module_type); break;
      case Op::Port: state_.release_port(it->node); break;
    }
  }
  entries_.clear();
  dag_.set_next_index_unchecked(start_index_);
}

namespace {

// New lightpath subtree for one segment, resources included.
IntentId install_segment(const Segment& seg, SlotInterval interval, IntentId user, double rate_gbps,
                         MutationJournal& journal, CompilationOutcome& outcome) {
  LightpathIntent lp;
  lp.nodes = seg.nodes;
  lp.module_type = seg.module_type;
  lp.mode = seg.mode;
  lp.length_km = seg.length_km;
  lp.capacity_gbps = seg.mode.rate_gbps;
  lp.groomed_load_gbps = rate_gbps;
  const IntentId lp_id = journal.add_child(user, lp);
  outcome.created.push_back(lp_id);

  const NodeIndex ends[2] = {seg.nodes.front(), seg.nodes.back()};
  for (NodeIndex n : ends) {
    journal.reserve_port(n);
    outcome.created.push_back(journal.add_child(lp_id, NodeRouterPortIntent{n}));
  }
  for (NodeIndex n : ends) {
    journal.reserve_transmodule(n, seg.module_type);
    outcome.created.push_back(journal.add_child(lp_id, NodeTransmoduleIntent{n, seg.module_type}));
  }
  const IntentId sp_id = journal.add_child(lp_id, SpectrumIntent{interval, seg.fibers});
  outcome.created.push_back(sp_id);
  for (std::size_t i = 0; i < seg.fibers.size(); ++i) {
    journal.reserve_slots(seg.fibers[i], interval);
    outcome.created.push_back(journal.add_child(sp_id, NodeSpectrumIntent{seg.nodes[i], seg.fibers[i], interval}));
  }
  return lp_id;
}

void finalize_installed(IntentId root, MutationJournal& journal, CompilationOutcome& outcome) {
  journal.set_state(root, LifecycleState::Compiled);
  for (IntentId id : outcome.created) journal.set_state(id, LifecycleState::Compiled);
  for (IntentId id : outcome.created) journal.set_state(id, LifecycleState::Installed);
  journal.set_state(root, LifecycleState::Installed);
  outcome.status = LifecycleState::Installed;
}

// Rate the cheapest-first SAP policy can carry over `km`: the modes that
// reach, fit a port, and whose module type has equipment at both ends.
struct SapMode {
  std::size_t module_type;
  ModeTuple mode;
  double cost;
};

std::vector<SapMode> sap_modes(const NetworkState& state, NodeIndex a, NodeIndex b, double km) {
  const auto& catalog = state.catalog();
  std::vector<SapMode> out;
  if (!state.equipment(a).router_ports.can_take() || !state.equipment(b).router_ports.can_take()) return out;
  for (std::size_t m = 0; m < catalog.modules.size(); ++m) {
    if (!state.equipment(a).transmodules[m].can_take() || !state.equipment(b).transmodules[m].can_take()) continue;
    for (const auto& mode : catalog.modules[m].modes) {
      if (mode.reach_km >= km && mode.rate_gbps <= catalog.router_port_rate_gbps) {
        out.push_back({m, mode, catalog.modules[m].cost});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SapMode& x, const SapMode& y) {
    if (x.cost != y.cost) return x.cost < y.cost;
    return x.mode.slots < y.mode.slots;
  });
  return out;
}

std::vector<double> split_rate(double rate, double chunk) {
  std::vector<double> parts;
  double remaining = rate;
  while (remaining > kRateTolerance * std::max(1.0, rate)) {
    const double part = std::min(remaining, chunk);
    parts.push_back(part);
    remaining -= part;
  }
  return parts;
}

bool compile_sap(const CompilerKind& kind, IntentId root, const ConnectivityIntent& demand, NetworkState& state,
                 MutationJournal& journal, const CompileOptions& options, CompilationOutcome& outcome) {
  const auto& topo = state.topology();
  const std::size_t guard = state.catalog().guard_band_slots;
  const auto paths = k_shortest_paths(topo, demand.source, demand.destination, kind.k);
  if (paths.empty()) {
    outcome.reason = "no physical path";
    return false;
  }
  for (const auto& path : paths) {
    Segment seg;
    seg.nodes = path.nodes;
    seg.length_km = path.length_km;
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
      seg.fibers.push_back(*topo.fiber_between(path.nodes[i], path.nodes[i + 1]));
    }
    const auto modes = sap_modes(state, demand.source, demand.destination, path.length_km);
    if (modes.empty()) continue;
    double top = 0.0;
    for (const auto& m : modes) top = std::max(top, m.mode.rate_gbps);
    const auto parts = split_rate(demand.rate_gbps, top);
    if (parts.size() > options.max_splits) continue;

    const std::size_t mark = outcome.created.size();
    MutationJournal attempt(state, journal.dag_ref());
    bool ok = true;
    std::vector<PlacedRoute> placed;
    for (double part : parts) {
      const SapMode* pick = nullptr;
      for (const auto& m : modes) {
        if (m.mode.rate_gbps + kRateTolerance >= part) {
          pick = &m;
          break;
        }
      }
      const auto& eq_a = state.equipment(demand.source);
      const auto& eq_b = state.equipment(demand.destination);
      std::optional<SlotInterval> iv;
      if (pick && eq_a.router_ports.can_take() && eq_b.router_ports.can_take() &&
          eq_a.transmodules[pick->module_type].can_take() && eq_b.transmodules[pick->module_type].can_take()) {
        iv = segment_first_fit(state, seg.fibers, static_cast<std::size_t>(pick->mode.slots) + guard);
      }
      if (!iv) {
        ok = false;
        break;
      }
      seg.module_type = pick->module_type;
      seg.mode = pick->mode;
      const IntentId lp = install_segment(seg, *iv, root, part, attempt, outcome);
      attempt.append_route(root, RouteHops{part, {lp}});
      placed.push_back({part, {lp}, {{lp, *iv}}, std::nullopt, seg.length_km});
    }
    if (!ok) {
      attempt.rollback();
      outcome.created.resize(mark);
      continue;
    }
    journal.absorb(attempt);
    outcome.routes = std::move(placed);
    return true;
  }
  outcome.reason = "no spectrum or equipment on any of the k shortest paths";
  return false;
}

bool compile_multilayer(Objective objective, IntentId root, const ConnectivityIntent& demand, NetworkState& state,
                        IntentDag& dag, MutationJournal& journal, const CompileOptions& options,
                        CompilationOutcome& outcome) {
  const auto& catalog = state.catalog();
  double top = 0.0;
  for (const auto& type : catalog.modules) {
    for (const auto& m : type.modes) {
      if (m.rate_gbps <= catalog.router_port_rate_gbps) top = std::max(top, m.rate_gbps);
    }
  }
  if (top <= 0.0) {
    outcome.reason = "no usable transmission mode";
    return false;
  }
  const auto parts = split_rate(demand.rate_gbps, top);
  if (parts.size() > options.max_splits) {
    outcome.reason = fmt::format("demand needs {} channels, more than the split limit {}", parts.size(),
                                 options.max_splits);
    return false;
  }

  SearchOptions search;
  search.label_cap = options.label_cap;
  search.port_rate_gbps = catalog.router_port_rate_gbps;
  search.guard_slots = catalog.guard_band_slots;

  for (double part : parts) {
    const MultilayerGraph graph = build_multilayer_graph(state, dag, part);
    SearchResult found = nondominated_paths(graph, demand.source, demand.destination, part, search);
    outcome.cap_hits += found.cap_hits;
    auto winner = select_winner(found.labels, objective);
    if (!winner) {
      outcome.reason = "no feasible multilayer path";
      return false;
    }
    std::vector<SlotInterval> intervals;
    for (const auto& seg : winner->segments) {
      auto iv = segment_first_fit(state, seg.fibers, static_cast<std::size_t>(seg.mode.slots) +
                                                         catalog.guard_band_slots);
      if (!iv) throw InvariantViolation("search reported a segment that first fit cannot place");
      intervals.push_back(*iv);
    }
    PlacedRoute placed;
    placed.rate_gbps = part;
    placed.length_km = winner->length_km;
    const std::size_t mark = outcome.created.size();
    try {
      placed.lightpaths = decompose_to_intents(*winner, graph, intervals, root, part, journal, outcome);
    } catch (const ResourceConflict& e) {
      throw InvariantViolation(fmt::format("search result could not be reserved: {}", e.what()));
    }
    std::size_t seg_index = 0;
    for (std::size_t i = mark; i < outcome.created.size(); ++i) {
      if (dag.at(outcome.created[i]).is<LightpathIntent>()) {
        placed.new_lightpaths.push_back({outcome.created[i], intervals[seg_index++]});
      }
    }
    placed.winner = std::move(winner);
    outcome.routes.push_back(std::move(placed));
  }
  return true;
}

}  // namespace

std::vector<IntentId> decompose_to_intents(const PathLabel& winner, const MultilayerGraph& graph,
                                           const std::vector<SlotInterval>& intervals, IntentId user,
                                           double rate_gbps, MutationJournal& journal, CompilationOutcome& outcome) {
  const auto& demand = journal.dag_ref().at(user).as<ConnectivityIntent>();
  if (winner.has_open_segment() || winner.vertex != vertex_of(demand.destination, Layer::Router) ||
      winner.vertices.front() != vertex_of(demand.source, Layer::Router)) {
    throw ContractViolation("winner label is incomplete");
  }
  if (intervals.size() != winner.segments.size()) throw ContractViolation("one interval per segment required");
  std::vector<IntentId> hops;
  std::size_t seg_index = 0;
  for (EdgeIndex e : winner.edges) {
    const MLEdge& edge = graph.edge(e);
    if (edge.cost.type == EdgeType::Virtual) {
      journal.add_grooming_edge(user, *edge.cost.lightpath, rate_gbps);
      outcome.grooming_edges.push_back({user, *edge.cost.lightpath, rate_gbps});
      hops.push_back(*edge.cost.lightpath);
    } else if (edge.cost.type == EdgeType::OpticalToVirtual) {
      hops.push_back(install_segment(winner.segments[seg_index], intervals[seg_index], user, rate_gbps, journal,
                                     outcome));
      ++seg_index;
    }
  }
  journal.append_route(user, RouteHops{rate_gbps, hops});
  return hops;
}

void teardown_user_intent(IntentId root, NetworkState& state, IntentDag& dag) {
  for (const Intent& gone : dag.remove_user_intent(root)) {
    if (gone.state != LifecycleState::Installed) continue;
    if (const auto* ns = std::get_if<NodeSpectrumIntent>(&gone.kind)) {
      state.release_slots(ns->fiber, ns->interval);
    } else if (const auto* nt = std::get_if<NodeTransmoduleIntent>(&gone.kind)) {
      state.release_transmodule(nt->node, nt->module_type);
    } else if (const auto* np = std::get_if<NodeRouterPortIntent>(&gone.kind)) {
      state.release_port(np->node);
    }
  }
}

CompilationOutcome compile(const CompilerKind& kind, IntentId intent, NetworkState& state, IntentDag& dag,
                           const CompileOptions& options) {
  const Intent& root = dag.at(intent);
  if (!root.is<ConnectivityIntent>()) throw ContractViolation("only connectivity intents are compiled");
  if (root.state != LifecycleState::Uncompiled) throw ContractViolation("intent was already compiled");
  if (kind.strategy == CompilerKind::Strategy::Sap && kind.k == 0) throw ContractViolation("SAP needs k >= 1");
  const ConnectivityIntent demand = root.as<ConnectivityIntent>();

  CompilationOutcome outcome;
  MutationJournal journal(state, dag);
  bool ok = false;
  try {
    switch (kind.strategy) {
      case CompilerKind::Strategy::Sap:
        ok = compile_sap(kind, intent, demand, state, journal, options, outcome);
        break;
      case CompilerKind::Strategy::Jml:
        ok = compile_multilayer(Objective::Jml, intent, demand, state, dag, journal, options, outcome);
        break;
      case CompilerKind::Strategy::Ldjml:
        ok = compile_multilayer(Objective::Ldjml, intent, demand, state, dag, journal, options, outcome);
        break;
    }
  } catch (...) {
    journal.rollback();
    throw;
  }

  if (!ok) {
    journal.rollback();
    CompilationOutcome blocked;
    blocked.reason = std::move(outcome.reason);
    blocked.cap_hits = outcome.cap_hits;
    outcome = std::move(blocked);
    dag.set_state(intent, LifecycleState::Blocked);
    return outcome;
  }
  finalize_installed(intent, journal, outcome);
  if (options.check_invariants) {
    const auto problems = verify_dag(dag, state);
    if (!problems.empty()) throw InvariantViolation("after compilation: " + problems.front());
  }
  return outcome;
}

}  // namespace groom
