#include "groom/intent_dag.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "groom/errors.hpp"

namespace groom {

namespace {

constexpr double kRateEpsilon = 1e-9;

bool rate_le(double a, double b) { return a <= b + kRateEpsilon * std::max(1.0, std::abs(b)); }

std::string id_str(IntentId id) { return "#" + std::to_string(id.value); }

}  // namespace

std::string_view to_string(LifecycleState s) {
  switch (s) {
    case LifecycleState::Uncompiled: return "Uncompiled";
    case LifecycleState::Compiled: return "Compiled";
    case LifecycleState::Installed: return "Installed";
    case LifecycleState::Blocked: return "Blocked";
  }
  return "?";
}

std::string_view kind_name(const IntentKind& kind) {
  static constexpr std::string_view kNames[] = {"Connectivity",    "Lightpath",      "Spectrum",
                                                "NodeTransmodule", "NodeRouterPort", "NodeSpectrum"};
  return kNames[kind.index()];
}

IntentDag::Entry& IntentDag::entry(IntentId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownIntent("unknown intent " + id_str(id));
  return it->second;
}

const IntentDag::Entry& IntentDag::entry(IntentId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownIntent("unknown intent " + id_str(id));
  return it->second;
}

const Intent& IntentDag::at(IntentId id) const { return entry(id).intent; }
const std::vector<ParentLink>& IntentDag::parents(IntentId id) const { return entry(id).parents; }
const std::vector<IntentId>& IntentDag::children(IntentId id) const { return entry(id).children; }

std::vector<IntentId> IntentDag::ids() const {
  std::vector<IntentId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, e] : nodes_) out.push_back(id);
  return out;
}

std::vector<IntentId> IntentDag::roots() const {
  std::vector<IntentId> out;
  for (const auto& [id, e] : nodes_) {
    if (e.parents.empty()) out.push_back(id);
  }
  return out;
}

IntentId IntentDag::allocate(IntentKind kind) {
  const IntentId id{next_++};
  nodes_.emplace(id, Entry{Intent{id, std::move(kind), LifecycleState::Uncompiled}, {}, {}});
  return id;
}

IntentId IntentDag::add_user_intent(NodeIndex source, NodeIndex destination, double rate_gbps) {
  if (source == destination) throw InvalidIntent("source and destination must differ");
  if (!(rate_gbps > 0.0)) throw InvalidIntent("rate must be positive");
  return allocate(ConnectivityIntent{source, destination, rate_gbps, {}});
}

IntentId IntentDag::add_child(IntentId parent, IntentKind kind) {
  entry(parent);
  if (std::holds_alternative<ConnectivityIntent>(kind)) {
    throw InvalidIntent("connectivity intents are roots and cannot be children");
  }
  double rate = 0.0;
  if (const auto* lp = std::get_if<LightpathIntent>(&kind)) {
    if (!rate_le(lp->groomed_load_gbps, lp->capacity_gbps)) {
      throw GroomingCapacityError("lightpath load exceeds its capacity");
    }
    rate = lp->groomed_load_gbps;
  }
  const IntentId id = allocate(std::move(kind));
  entry(parent).children.push_back(id);
  entry(id).parents.push_back({parent, rate});
  return id;
}

bool IntentDag::reaches(IntentId ancestor, IntentId descendant) const {
  std::set<IntentId> seen;
  std::vector<IntentId> stack{ancestor};
  while (!stack.empty()) {
    IntentId cur = stack.back();
    stack.pop_back();
    if (cur == descendant) return true;
    if (!seen.insert(cur).second) continue;
    for (IntentId c : entry(cur).children) stack.push_back(c);
  }
  return false;
}

namespace {

double sum_parent_rates(const std::vector<ParentLink>& parents) {
  double load = 0.0;
  for (const auto& p : parents) load += p.rate_gbps;
  return load;
}

}  // namespace

void IntentDag::add_grooming_edge(IntentId parent, IntentId lightpath, double rate_gbps) {
  entry(parent);
  Entry& lp_entry = entry(lightpath);
  auto* lp = std::get_if<LightpathIntent>(&lp_entry.intent.kind);
  if (!lp) throw ContractViolation("grooming target " + id_str(lightpath) + " is not a lightpath");
  if (!(rate_gbps > 0.0)) throw InvalidIntent("grooming rate must be positive");
  if (reaches(lightpath, parent)) {
    throw CycleError("grooming edge " + id_str(parent) + " -> " + id_str(lightpath) + " would close a cycle");
  }
  if (!rate_le(rate_gbps, lp->capacity_gbps - lp->groomed_load_gbps)) {
    throw GroomingCapacityError(fmt::format("lightpath {} has {} Gbps residual, {} requested", id_str(lightpath),
                                            lp->capacity_gbps - lp->groomed_load_gbps, rate_gbps));
  }
  auto it = std::find_if(lp_entry.parents.begin(), lp_entry.parents.end(),
                         [&](const ParentLink& p) { return p.parent == parent; });
  if (it != lp_entry.parents.end()) {
    it->rate_gbps += rate_gbps;
  } else {
    lp_entry.parents.push_back({parent, rate_gbps});
    entry(parent).children.push_back(lightpath);
  }
  lp->groomed_load_gbps = sum_parent_rates(lp_entry.parents);
}

double IntentDag::residual_capacity(IntentId lightpath) const {
  const auto* lp = std::get_if<LightpathIntent>(&at(lightpath).kind);
  if (!lp) throw ContractViolation(id_str(lightpath) + " is not a lightpath");
  return std::max(0.0, lp->capacity_gbps - lp->groomed_load_gbps);
}

void IntentDag::unlink(IntentId parent, IntentId child) {
  Entry& c = entry(child);
  std::erase_if(c.parents, [&](const ParentLink& p) { return p.parent == parent; });
  if (auto* lp = std::get_if<LightpathIntent>(&c.intent.kind)) lp->groomed_load_gbps = sum_parent_rates(c.parents);
  std::erase(entry(parent).children, child);
}

void IntentDag::release_subtree(IntentId id, std::vector<Intent>& out) {
  const std::vector<IntentId> kids = entry(id).children;
  for (IntentId c : kids) {
    unlink(id, c);
    if (entry(c).parents.empty()) release_subtree(c, out);
  }
  out.push_back(entry(id).intent);
  nodes_.erase(id);
}

std::vector<Intent> IntentDag::remove_user_intent(IntentId root) {
  const Entry& e = entry(root);
  if (!e.intent.is<ConnectivityIntent>() || !e.parents.empty()) {
    throw ContractViolation(id_str(root) + " is not a user intent");
  }
  std::vector<Intent> released;
  const std::vector<IntentId> kids = e.children;
  for (IntentId c : kids) {
    unlink(root, c);
    if (entry(c).parents.empty()) release_subtree(c, released);
  }
  nodes_.erase(root);
  return released;
}

void IntentDag::set_state(IntentId id, LifecycleState next) {
  Intent& intent = entry(id).intent;
  using S = LifecycleState;
  const S cur = intent.state;
  const bool ok = (cur == S::Uncompiled && (next == S::Compiled || next == S::Blocked)) ||
                  (cur == S::Compiled && next == S::Installed);
  if (!ok) {
    throw ContractViolation(fmt::format("illegal transition {} -> {} for {}", to_string(cur), to_string(next),
                                        id_str(id)));
  }
  intent.state = next;
}

void IntentDag::append_route(IntentId root, RouteHops route) {
  auto* c = std::get_if<ConnectivityIntent>(&entry(root).intent.kind);
  if (!c) throw ContractViolation(id_str(root) + " is not a user intent");
  c->routes.push_back(std::move(route));
}

void IntentDag::insert_unchecked(Intent intent) {
  const IntentId id = intent.id;
  nodes_[id] = Entry{std::move(intent), {}, {}};
  next_ = std::max(next_, id.value + 1);
}

void IntentDag::add_edge_unchecked(IntentId parent, IntentId child, double rate_gbps) {
  entry(parent).children.push_back(child);
  entry(child).parents.push_back({parent, rate_gbps});
}

void IntentDag::erase_leaf_unchecked(IntentId id) {
  const Entry e = entry(id);
  if (!e.children.empty()) throw ContractViolation(id_str(id) + " still has children");
  for (const auto& p : e.parents) std::erase(entry(p.parent).children, id);
  nodes_.erase(id);
}

void IntentDag::remove_grooming_unchecked(IntentId parent, IntentId lightpath, double rate_gbps) {
  Entry& lp_entry = entry(lightpath);
  auto it = std::find_if(lp_entry.parents.begin(), lp_entry.parents.end(),
                         [&](const ParentLink& p) { return p.parent == parent; });
  if (it == lp_entry.parents.end()) throw ContractViolation("no grooming edge to remove");
  it->rate_gbps -= rate_gbps;
  if (it->rate_gbps <= kRateEpsilon) {
    lp_entry.parents.erase(it);
    std::erase(entry(parent).children, lightpath);
  }
  std::get<LightpathIntent>(lp_entry.intent.kind).groomed_load_gbps = sum_parent_rates(lp_entry.parents);
}

void IntentDag::force_state(IntentId id, LifecycleState state) { entry(id).intent.state = state; }

void IntentDag::pop_route_unchecked(IntentId root) {
  std::get<ConnectivityIntent>(entry(root).intent.kind).routes.pop_back();
}

bool is_acyclic(const IntentDag& dag) {
  std::map<IntentId, std::size_t> indegree;
  for (IntentId id : dag.ids()) indegree[id] = dag.parents(id).size();
  std::deque<IntentId> ready;
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.push_back(id);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    IntentId cur = ready.front();
    ready.pop_front();
    ++visited;
    for (IntentId c : dag.children(cur)) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  return visited == indegree.size();
}

std::vector<std::string> verify_dag(const IntentDag& dag, const NetworkState& state) {
  std::vector<std::string> out;
  const auto& topo = state.topology();
  const auto& catalog = state.catalog();

  if (!is_acyclic(dag)) out.push_back("cycle in intent DAG");

  // fiber index -> slot -> owner
  std::vector<std::map<std::size_t, IntentId>> owners(topo.fiber_count());
  std::vector<std::vector<int>> modules_held(topo.node_count(), std::vector<int>(catalog.modules.size(), 0));
  std::vector<int> ports_held(topo.node_count(), 0);

  for (IntentId id : dag.ids()) {
    const Intent& intent = dag.at(id);
    const auto& parents = dag.parents(id);
    const auto& kids = dag.children(id);
    const bool installed = intent.state == LifecycleState::Installed;

    if (intent.is<ConnectivityIntent>()) {
      if (!parents.empty()) out.push_back(fmt::format("connectivity intent {} has parents", id_str(id)));
      const auto& c = intent.as<ConnectivityIntent>();
      double routed = 0.0;
      for (const auto& r : c.routes) {
        routed += r.rate_gbps;
        for (IntentId lp : r.lightpaths) {
          if (!dag.contains(lp) || std::find(kids.begin(), kids.end(), lp) == kids.end()) {
            out.push_back(fmt::format("route of {} names {} which is not its child", id_str(id), id_str(lp)));
          }
        }
      }
      if (installed && std::abs(routed - c.rate_gbps) > kRateEpsilon * std::max(1.0, c.rate_gbps)) {
        out.push_back(fmt::format("installed intent {} routes {} of {} Gbps", id_str(id), routed, c.rate_gbps));
      }
      if (intent.state == LifecycleState::Blocked && !kids.empty()) {
        out.push_back(fmt::format("blocked intent {} has children", id_str(id)));
      }
      continue;
    }

    if (parents.empty()) out.push_back(fmt::format("{} intent {} has no parent", kind_name(intent.kind), id_str(id)));

    if (const auto* lp = std::get_if<LightpathIntent>(&intent.kind)) {
      double parent_sum = 0.0;
      for (const auto& p : parents) {
        parent_sum += p.rate_gbps;
        // The parent's routes through this lightpath must account for its share.
        if (dag.contains(p.parent) && dag.at(p.parent).is<ConnectivityIntent>()) {
          double routed = 0.0;
          for (const auto& r : dag.at(p.parent).as<ConnectivityIntent>().routes) {
            for (IntentId hop : r.lightpaths) {
              if (hop == id) routed += r.rate_gbps;
            }
          }
          if (std::abs(routed - p.rate_gbps) > kRateEpsilon * std::max(1.0, p.rate_gbps)) {
            out.push_back(fmt::format("lightpath {} carries {} Gbps for {} but its routes use {}", id_str(id),
                                      p.rate_gbps, id_str(p.parent), routed));
          }
        }
      }
      if (std::abs(parent_sum - lp->groomed_load_gbps) > kRateEpsilon * std::max(1.0, parent_sum)) {
        out.push_back(fmt::format("lightpath {} load {} differs from parent shares {}", id_str(id),
                                  lp->groomed_load_gbps, parent_sum));
      }
      if (!rate_le(lp->groomed_load_gbps, lp->capacity_gbps)) {
        out.push_back(fmt::format("lightpath {} overloaded: {} > {}", id_str(id), lp->groomed_load_gbps,
                                  lp->capacity_gbps));
      }
      if (!rate_le(lp->capacity_gbps, lp->mode.rate_gbps)) {
        out.push_back(fmt::format("lightpath {} capacity exceeds its mode rate", id_str(id)));
      }
      if (installed) {
        int ports = 0, modules = 0, spectra = 0;
        for (IntentId k : kids) {
          const Intent& ki = dag.at(k);
          ports += ki.is<NodeRouterPortIntent>();
          modules += ki.is<NodeTransmoduleIntent>();
          if (const auto* sp = std::get_if<SpectrumIntent>(&ki.kind)) {
            ++spectra;
            if (sp->interval.length != static_cast<std::size_t>(lp->mode.slots) + catalog.guard_band_slots) {
              out.push_back(fmt::format("spectrum {} width {} does not match lightpath {} mode ({} slots)",
                                        id_str(k), sp->interval.length, id_str(id), lp->mode.slots));
            }
            if (sp->fibers.size() + 1 != lp->nodes.size()) {
              out.push_back(fmt::format("spectrum {} fiber count does not match lightpath {}", id_str(k), id_str(id)));
            }
          }
        }
        if (ports != 2 || modules != 2 || spectra != 1) {
          out.push_back(fmt::format("lightpath {} decomposes into {} ports, {} modules, {} spectra", id_str(id), ports,
                                    modules, spectra));
        }
      }
      continue;
    }

    if (const auto* sp = std::get_if<SpectrumIntent>(&intent.kind)) {
      std::size_t node_spectra = 0;
      for (IntentId k : kids) {
        const auto* ns = std::get_if<NodeSpectrumIntent>(&dag.at(k).kind);
        if (!ns) continue;
        ++node_spectra;
        if (ns->interval != sp->interval) {
          out.push_back(fmt::format("node spectrum {} interval differs from its spectrum {}", id_str(k), id_str(id)));
        }
        if (std::find(sp->fibers.begin(), sp->fibers.end(), ns->fiber) == sp->fibers.end()) {
          out.push_back(fmt::format("node spectrum {} fiber not on spectrum {}", id_str(k), id_str(id)));
        }
      }
      if (installed && node_spectra != sp->fibers.size()) {
        out.push_back(fmt::format("spectrum {} has {} node spectra for {} fibers", id_str(id), node_spectra,
                                  sp->fibers.size()));
      }
      continue;
    }

    if (!installed) continue;
    if (const auto* ns = std::get_if<NodeSpectrumIntent>(&intent.kind)) {
      if (ns->fiber.index() >= topo.fiber_count() || ns->interval.end() > state.slots_per_fiber()) {
        out.push_back(fmt::format("node spectrum {} out of range", id_str(id)));
        continue;
      }
      const SlotMask& free = state.availability(ns->fiber);
      for (std::size_t s = ns->interval.start; s < ns->interval.end(); ++s) {
        auto [it, fresh] = owners[ns->fiber.index()].emplace(s, id);
        if (!fresh) {
          out.push_back(fmt::format("fiber {} slot {} owned by both {} and {}", topo.fiber_label(ns->fiber), s,
                                    id_str(it->second), id_str(id)));
        }
        if (free.test(s)) {
          out.push_back(fmt::format("fiber {} slot {} owned by {} but free", topo.fiber_label(ns->fiber), s,
                                    id_str(id)));
        }
      }
    } else if (const auto* nt = std::get_if<NodeTransmoduleIntent>(&intent.kind)) {
      if (nt->node < topo.node_count() && nt->module_type < catalog.modules.size()) {
        ++modules_held[nt->node][nt->module_type];
      }
    } else if (const auto* np = std::get_if<NodeRouterPortIntent>(&intent.kind)) {
      if (np->node < topo.node_count()) ++ports_held[np->node];
    }
  }

  for (std::size_t i = 0; i < topo.fiber_count(); ++i) {
    const FiberId f = FiberId::from_index(i);
    const SlotMask& free = state.availability(f);
    for (std::size_t s = 0; s < free.size(); ++s) {
      if (!free.test(s) && !owners[i].count(s)) {
        out.push_back(fmt::format("fiber {} slot {} occupied without owner", topo.fiber_label(f), s));
      }
    }
  }
  for (NodeIndex n = 0; n < topo.node_count(); ++n) {
    const auto& eq = state.equipment(n);
    for (std::size_t m = 0; m < catalog.modules.size(); ++m) {
      if (eq.transmodules[m].in_use != modules_held[n][m]) {
        out.push_back(fmt::format("node {} has {} {} modules in use but {} intents hold one", topo.nodes()[n].name,
                                  eq.transmodules[m].in_use, catalog.modules[m].name, modules_held[n][m]));
      }
    }
    if (eq.router_ports.in_use != ports_held[n]) {
      out.push_back(fmt::format("node {} has {} router ports in use but {} intents hold one", topo.nodes()[n].name,
                                eq.router_ports.in_use, ports_held[n]));
    }
  }
  return out;
}

namespace {

nlohmann::json fiber_json(const Topology& topo, FiberId f) {
  return {{"link", topo.links()[f.link].name},
          {"from", topo.nodes()[topo.fiber_from(f)].name},
          {"to", topo.nodes()[topo.fiber_to(f)].name}};
}

FiberId fiber_from_json(const Topology& topo, const nlohmann::json& j) {
  const std::string link = j.at("link").get<std::string>();
  const NodeIndex from = topo.node_index(j.at("from").get<std::string>());
  for (std::size_t l = 0; l < topo.link_count(); ++l) {
    if (topo.links()[l].name != link) continue;
    const FiberId f{static_cast<std::uint32_t>(l), static_cast<std::uint8_t>(topo.links()[l].a == from ? 0 : 1)};
    if (topo.fiber_from(f) != from) break;
    return f;
  }
  throw ParseError(0, "dag dump: unknown fiber on link " + link);
}

nlohmann::json interval_json(SlotInterval iv) { return {{"start", iv.start}, {"length", iv.length}}; }

SlotInterval interval_from_json(const nlohmann::json& j) {
  return {j.at("start").get<std::size_t>(), j.at("length").get<std::size_t>()};
}

LifecycleState state_from_name(const std::string& s) {
  for (auto st : {LifecycleState::Uncompiled, LifecycleState::Compiled, LifecycleState::Installed,
                  LifecycleState::Blocked}) {
    if (to_string(st) == s) return st;
  }
  throw ParseError(0, "dag dump: unknown state " + s);
}

std::size_t module_from_json(const Catalog& c, const nlohmann::json& j) {
  auto m = c.find_module(j.get<std::string>());
  if (!m) throw ParseError(0, "dag dump: unknown module type " + j.get<std::string>());
  return *m;
}

}  // namespace

nlohmann::json dag_to_json(const IntentDag& dag, const NetworkState& state) {
  const auto& topo = state.topology();
  const auto& catalog = state.catalog();
  auto name = [&](NodeIndex n) { return topo.nodes().at(n).name; };

  nlohmann::json j;
  j["next_index"] = dag.next_index();
  auto& intents = j["intents"] = nlohmann::json::array();
  auto& edges = j["edges"] = nlohmann::json::array();
  for (IntentId id : dag.ids()) {
    const Intent& intent = dag.at(id);
    nlohmann::json ji;
    ji["id"] = id.value;
    ji["kind"] = kind_name(intent.kind);
    ji["state"] = to_string(intent.state);
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ConnectivityIntent>) {
            ji["source"] = name(k.source);
            ji["destination"] = name(k.destination);
            ji["rate_gbps"] = k.rate_gbps;
            auto& routes = ji["routes"] = nlohmann::json::array();
            for (const auto& r : k.routes) {
              nlohmann::json hops = nlohmann::json::array();
              for (IntentId h : r.lightpaths) hops.push_back(h.value);
              routes.push_back({{"rate_gbps", r.rate_gbps}, {"lightpaths", hops}});
            }
          } else if constexpr (std::is_same_v<T, LightpathIntent>) {
            nlohmann::json nodes = nlohmann::json::array();
            for (NodeIndex n : k.nodes) nodes.push_back(name(n));
            ji["nodes"] = nodes;
            ji["module"] = catalog.modules.at(k.module_type).name;
            ji["mode"] = {{"rate_gbps", k.mode.rate_gbps}, {"reach_km", k.mode.reach_km}, {"slots", k.mode.slots}};
            ji["length_km"] = k.length_km;
            ji["capacity_gbps"] = k.capacity_gbps;
            ji["groomed_load_gbps"] = k.groomed_load_gbps;
          } else if constexpr (std::is_same_v<T, SpectrumIntent>) {
            ji["interval"] = interval_json(k.interval);
            auto& fibers = ji["fibers"] = nlohmann::json::array();
            for (FiberId f : k.fibers) fibers.push_back(fiber_json(topo, f));
          } else if constexpr (std::is_same_v<T, NodeTransmoduleIntent>) {
            ji["node"] = name(k.node);
            ji["module"] = catalog.modules.at(k.module_type).name;
          } else if constexpr (std::is_same_v<T, NodeRouterPortIntent>) {
            ji["node"] = name(k.node);
          } else {
            ji["node"] = name(k.node);
            ji["fiber"] = fiber_json(topo, k.fiber);
            ji["interval"] = interval_json(k.interval);
          }
        },
        intent.kind);
    intents.push_back(std::move(ji));
    for (const auto& p : dag.parents(id)) {
      edges.push_back({{"parent", p.parent.value}, {"child", id.value}, {"rate_gbps", p.rate_gbps}});
    }
  }
  return j;
}

IntentDag dag_from_json(const nlohmann::json& j, const NetworkState& state) {
  const auto& topo = state.topology();
  const auto& catalog = state.catalog();
  try {
    IntentDag dag;
    for (const auto& ji : j.at("intents")) {
      Intent intent;
      intent.id = IntentId{ji.at("id").get<std::uint64_t>()};
      intent.state = state_from_name(ji.at("state").get<std::string>());
      const std::string kind = ji.at("kind").get<std::string>();
      if (kind == "Connectivity") {
        ConnectivityIntent c;
        c.source = topo.node_index(ji.at("source").get<std::string>());
        c.destination = topo.node_index(ji.at("destination").get<std::string>());
        c.rate_gbps = ji.at("rate_gbps").get<double>();
        for (const auto& jr : ji.at("routes")) {
          RouteHops r;
          r.rate_gbps = jr.at("rate_gbps").get<double>();
          for (const auto& h : jr.at("lightpaths")) r.lightpaths.push_back(IntentId{h.get<std::uint64_t>()});
          c.routes.push_back(std::move(r));
        }
        intent.kind = std::move(c);
      } else if (kind == "Lightpath") {
        LightpathIntent lp;
        for (const auto& n : ji.at("nodes")) lp.nodes.push_back(topo.node_index(n.get<std::string>()));
        lp.module_type = module_from_json(catalog, ji.at("module"));
        const auto& jm = ji.at("mode");
        lp.mode = {jm.at("rate_gbps").get<double>(), jm.at("reach_km").get<double>(), jm.at("slots").get<int>()};
        lp.length_km = ji.at("length_km").get<double>();
        lp.capacity_gbps = ji.at("capacity_gbps").get<double>();
        lp.groomed_load_gbps = ji.at("groomed_load_gbps").get<double>();
        intent.kind = std::move(lp);
      } else if (kind == "Spectrum") {
        SpectrumIntent sp;
        sp.interval = interval_from_json(ji.at("interval"));
        for (const auto& f : ji.at("fibers")) sp.fibers.push_back(fiber_from_json(topo, f));
        intent.kind = std::move(sp);
      } else if (kind == "NodeTransmodule") {
        intent.kind = NodeTransmoduleIntent{topo.node_index(ji.at("node").get<std::string>()),
                                            module_from_json(catalog, ji.at("module"))};
      } else if (kind == "NodeRouterPort") {
        intent.kind = NodeRouterPortIntent{topo.node_index(ji.at("node").get<std::string>())};
      } else if (kind == "NodeSpectrum") {
        intent.kind = NodeSpectrumIntent{topo.node_index(ji.at("node").get<std::string>()),
                                         fiber_from_json(topo, ji.at("fiber")),
                                         interval_from_json(ji.at("interval"))};
      } else {
        throw ParseError(0, "dag dump: unknown intent kind " + kind);
      }
      if (dag.contains(intent.id)) throw ParseError(0, "dag dump: duplicate intent id");
      dag.insert_unchecked(std::move(intent));
    }
    for (const auto& je : j.at("edges")) {
      const IntentId parent{je.at("parent").get<std::uint64_t>()};
      const IntentId child{je.at("child").get<std::uint64_t>()};
      if (!dag.contains(parent) || !dag.contains(child)) throw ParseError(0, "dag dump: edge to unknown intent");
      dag.add_edge_unchecked(parent, child, je.at("rate_gbps").get<double>());
    }
    dag.set_next_index_unchecked(std::max(dag.next_index(), j.at("next_index").get<std::uint64_t>()));
    return dag;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("dag dump: ") + e.what());
  } catch (const ContractViolation& e) {
    throw ParseError(0, std::string("dag dump: ") + e.what());
  }
}

}  // namespace groom
