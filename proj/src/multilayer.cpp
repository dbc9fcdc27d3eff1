#include "groom/multilayer.hpp"

#include <algorithm>

#include "groom/errors.hpp"

namespace groom {

std::string_view to_string(EdgeType t) {
  switch (t) {
    case EdgeType::Virtual: return "virtual";
    case EdgeType::Optical: return "optical";
    case EdgeType::OpticalToVirtual: return "optical-to-virtual";
    case EdgeType::VirtualToOptical: return "virtual-to-optical";
  }
  return "?";
}

MultilayerGraph::MultilayerGraph(std::size_t node_count, std::size_t slots_per_fiber)
    : slots_(slots_per_fiber), out_(node_count * 2) {}

EdgeIndex MultilayerGraph::add_edge(MLEdge edge) {
  if (edge.from >= out_.size() || edge.to >= out_.size()) throw ContractViolation("edge vertex out of range");
  edges_.push_back(std::move(edge));
  out_[edges_.back().from].push_back(edges_.size() - 1);
  return edges_.size() - 1;
}

std::size_t MultilayerGraph::count(EdgeType t) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [t](const MLEdge& e) { return e.cost.type == t; }));
}

MultilayerGraph build_multilayer_graph(const NetworkState& state, const IntentDag& dag, double demand_gbps) {
  const auto& topo = state.topology();
  const auto& catalog = state.catalog();
  const std::size_t slots = state.slots_per_fiber();
  MultilayerGraph g(topo.node_count(), slots);
  const SlotMask all_free(slots, true);

  for (NodeIndex n = 0; n < topo.node_count(); ++n) {
    const auto& eq = state.equipment(n);
    if (!eq.router_ports.can_take()) continue;
    for (std::size_t m = 0; m < catalog.modules.size(); ++m) {
      if (!eq.transmodules[m].can_take()) continue;
      const auto& type = catalog.modules[m];
      MLEdge tx;
      tx.from = vertex_of(n, Layer::Router);
      tx.to = vertex_of(n, Layer::Oxc);
      tx.cost = {0.0, type.cost, catalog.router_port_cost, type.modes, false, all_free, EdgeType::VirtualToOptical,
                 std::nullopt, 0.0};
      tx.module_type = m;
      tx.modules_left = eq.transmodules[m].remaining();
      tx.ports_left = eq.router_ports.remaining();
      g.add_edge(tx);

      MLEdge rx = tx;
      std::swap(rx.from, rx.to);
      rx.cost.modes.clear();
      rx.cost.type = EdgeType::OpticalToVirtual;
      g.add_edge(std::move(rx));
    }
  }

  for (std::size_t i = 0; i < topo.fiber_count(); ++i) {
    const FiberId f = FiberId::from_index(i);
    const double km = topo.fiber_length(f);
    MLEdge e;
    e.from = vertex_of(topo.fiber_from(f), Layer::Oxc);
    e.to = vertex_of(topo.fiber_to(f), Layer::Oxc);
    e.cost = {km, 0.0, 0.0, {}, false, state.availability(f), EdgeType::Optical, std::nullopt, km};
    e.fiber = f;
    g.add_edge(std::move(e));
  }

  for (IntentId id : dag.ids()) {
    const Intent& intent = dag.at(id);
    const auto* lp = std::get_if<LightpathIntent>(&intent.kind);
    if (!lp || intent.state != LifecycleState::Installed || lp->nodes.size() < 2) continue;
    const double residual = dag.residual_capacity(id);
    if (residual + 1e-9 * std::max(1.0, residual) < demand_gbps) continue;
    MLEdge e;
    e.from = vertex_of(lp->nodes.front(), Layer::Router);
    e.to = vertex_of(lp->nodes.back(), Layer::Router);
    e.cost = {0.0, 0.0, 0.0, {}, true, all_free, EdgeType::Virtual, id, lp->length_km};
    g.add_edge(std::move(e));
  }
  return g;
}

nlohmann::json multigraph_to_json(const MultilayerGraph& graph, const NetworkState& state) {
  const auto& topo = state.topology();
  nlohmann::json j;
  auto& vertices = j["vertices"] = nlohmann::json::array();
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    vertices.push_back({{"index", v},
                        {"node", topo.nodes()[node_of(v)].name},
                        {"layer", layer_of(v) == Layer::Router ? "router" : "oxc"}});
  }
  auto& edges = j["edges"] = nlohmann::json::array();
  for (EdgeIndex e = 0; e < graph.edges().size(); ++e) {
    const MLEdge& edge = graph.edge(e);
    const auto& c = edge.cost;
    nlohmann::json modes = nlohmann::json::array();
    for (const auto& m : c.modes) {
      modes.push_back({{"rate_gbps", m.rate_gbps}, {"reach_km", m.reach_km}, {"slots", m.slots}});
    }
    nlohmann::json je{{"index", e},
                      {"from", edge.from},
                      {"to", edge.to},
                      {"D", c.distance_km},
                      {"C", c.module_cost},
                      {"P", c.port_cost},
                      {"H", modes},
                      {"F", c.is_virtual},
                      {"W", c.free_slots.to_string()},
                      {"T", to_string(c.type)},
                      {"I", c.lightpath ? nlohmann::json(c.lightpath->value) : nlohmann::json()},
                      {"L", c.length_km}};
    if (edge.fiber) je["fiber"] = topo.fiber_label(*edge.fiber);
    if (edge.module_type) je["module"] = state.catalog().modules[*edge.module_type].name;
    edges.push_back(std::move(je));
  }
  return j;
}

}  // namespace groom
