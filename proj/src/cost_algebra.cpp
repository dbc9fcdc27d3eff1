#include "groom/cost_algebra.hpp"

#include <algorithm>

#include "groom/errors.hpp"

namespace groom {

double PathLabel::max_rate() const noexcept {
  double best = 0.0;
  for (const auto& c : chosen) best = std::max(best, c.mode.rate_gbps);
  for (const auto& m : open_modes) best = std::max(best, m.rate_gbps);
  return best;
}

std::size_t PathLabel::slot_usage() const noexcept {
  std::size_t n = 0;
  for (const auto& s : segments) n += static_cast<std::size_t>(s.mode.slots) * s.fibers.size();
  return n;
}

PathLabel initial_label(VertexIndex source_router, std::size_t node_count, std::size_t slots_per_fiber) {
  PathLabel l;
  l.vertex = source_router;
  l.free_slots = SlotMask(slots_per_fiber, true);
  l.visited_nodes = SlotMask(node_count, false);
  l.visited_nodes.set(node_of(source_router));
  l.vertices.push_back(source_router);
  return l;
}

namespace {

void step(PathLabel& l, const MLEdge& edge, EdgeIndex index) {
  l.vertex = edge.to;
  l.edges.push_back(index);
  l.vertices.push_back(edge.to);
}

bool enters_visited_node(const PathLabel& l, const MLEdge& edge) {
  const NodeIndex to = node_of(edge.to);
  return to != node_of(edge.from) && l.visited_nodes.test(to);
}

}  // namespace

std::optional<PathLabel> extend_label(const PathLabel& label, const MLEdge& edge, EdgeIndex edge_index,
                                      const ExtendContext& ctx, std::size_t mode_index) {
  if (edge.from != label.vertex) throw ContractViolation("edge does not start at the label's vertex");
  const EdgeCostVector& c = edge.cost;

  switch (c.type) {
    case EdgeType::VirtualToOptical: {
      if (label.has_open_segment()) throw ContractViolation("transmit edge inside an open segment");
      if (!edge.module_type) throw ContractViolation("transmit edge without module type");
      if (mode_index >= c.modes.size()) throw ContractViolation("mode index out of range");
      const ModeTuple mode = c.modes[mode_index];
      if (mode.rate_gbps < ctx.demand_gbps || mode.rate_gbps > ctx.port_rate_gbps) return std::nullopt;

      // Regenerating at a node takes a second port and possibly a second
      // module of the same type from that node's pools.
      const bool regenerating = label.after_receive && node_of(label.vertex) == node_of(edge.from);
      if (regenerating) {
        if (edge.ports_left && *edge.ports_left < 2) return std::nullopt;
        if (edge.modules_left && *edge.modules_left < 2 && !label.chosen.empty() &&
            label.chosen.back().module_type == *edge.module_type) {
          return std::nullopt;
        }
      }

      PathLabel l = label;
      step(l, edge, edge_index);
      l.module_cost += c.module_cost;
      l.port_cost += c.port_cost;
      l.open_modes = {mode};
      l.open_module = edge.module_type;
      l.distance_km = 0.0;
      l.free_slots.fill(true);
      l.open_segment = Segment{*edge.module_type, mode, {node_of(edge.from)}, {}, 0.0};
      l.after_receive = false;
      return l;
    }

    case EdgeType::Optical: {
      if (!label.has_open_segment()) throw ContractViolation("optical edge outside a segment");
      if (!edge.fiber) throw ContractViolation("optical edge without fiber");
      if (enters_visited_node(label, edge)) return std::nullopt;
      PathLabel l = label;
      step(l, edge, edge_index);
      l.distance_km += c.distance_km;
      l.length_km += c.length_km;
      l.free_slots &= c.free_slots;
      std::erase_if(l.open_modes, [&](const ModeTuple& m) {
        return m.reach_km < l.distance_km || !l.free_slots.has_run(static_cast<std::size_t>(m.slots) + ctx.guard_slots);
      });
      if (l.open_modes.empty()) return std::nullopt;
      l.visited_nodes.set(node_of(edge.to));
      l.open_segment.nodes.push_back(node_of(edge.to));
      l.open_segment.fibers.push_back(*edge.fiber);
      l.open_segment.length_km += c.length_km;
      return l;
    }

    case EdgeType::OpticalToVirtual: {
      if (!label.has_open_segment()) throw ContractViolation("receive edge outside a segment");
      if (!edge.module_type) throw ContractViolation("receive edge without module type");
      if (*edge.module_type != *label.open_module) return std::nullopt;
      if (label.open_segment.fibers.empty()) return std::nullopt;
      PathLabel l = label;
      step(l, edge, edge_index);
      l.module_cost += c.module_cost;
      l.port_cost += c.port_cost;
      l.open_segment.mode = l.open_modes.front();
      l.chosen.push_back({*l.open_module, l.open_segment.mode});
      l.segments.push_back(std::move(l.open_segment));
      l.open_segment = Segment{};
      l.open_modes.clear();
      l.open_module.reset();
      l.free_slots.fill(true);
      l.distance_km = 0.0;
      l.after_receive = true;
      return l;
    }

    case EdgeType::Virtual: {
      if (label.has_open_segment()) throw ContractViolation("virtual edge inside an open segment");
      if (!c.lightpath) throw ContractViolation("virtual edge without lightpath");
      if (enters_visited_node(label, edge)) return std::nullopt;
      PathLabel l = label;
      step(l, edge, edge_index);
      l.length_km += c.length_km;
      l.lightpaths.push_back(*c.lightpath);
      l.uses_virtual = true;
      l.visited_nodes.set(node_of(edge.to));
      l.after_receive = false;
      return l;
    }
  }
  throw ContractViolation("unknown edge type");
}

bool dominates(const PathLabel& a, const PathLabel& b) {
  const double ca = a.cost();
  const double cb = b.cost();
  const double ra = a.max_rate();
  const double rb = b.max_rate();
  if (a.distance_km > b.distance_km || ca > cb || (a.uses_virtual && !b.uses_virtual) || ra < rb ||
      !b.free_slots.is_subset_of(a.free_slots)) {
    return false;
  }
  return a.distance_km < b.distance_km || ca < cb || (!a.uses_virtual && b.uses_virtual) || ra > rb ||
         a.free_slots != b.free_slots;
}

namespace {

void require_complete(const PathLabel& label) {
  if (label.has_open_segment() || layer_of(label.vertex) != Layer::Router) {
    throw ContractViolation("objective of an incomplete label");
  }
}

}  // namespace

double objective_jml(const PathLabel& label) {
  require_complete(label);
  return label.cost();
}

std::pair<double, double> objective_ldjml(const PathLabel& label) {
  require_complete(label);
  return {label.length_km, label.cost()};
}

}  // namespace groom
