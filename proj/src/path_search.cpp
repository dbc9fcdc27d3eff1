#include "groom/path_search.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "groom/errors.hpp"

namespace groom {

namespace {

// True when every continuation of `b` is also a valid continuation of `a`,
// so that dominance of a over b survives any common suffix.
bool same_future(const PathLabel& a, const PathLabel& b) {
  if (a.open_module != b.open_module || a.open_modes != b.open_modes || a.after_receive != b.after_receive) {
    return false;
  }
  if (a.after_receive && a.chosen.back().module_type != b.chosen.back().module_type) return false;
  // An open segment without fibers cannot be received yet.
  if (a.has_open_segment() && a.open_segment.fibers.empty() && !b.open_segment.fibers.empty()) return false;
  return a.visited_nodes.is_subset_of(b.visited_nodes);
}

struct QueueKey {
  double cost;
  double length;
  std::size_t id;
  bool operator>(const QueueKey& o) const {
    return std::tie(cost, length, id) > std::tie(o.cost, o.length, o.id);
  }
};

}  // namespace

SearchResult nondominated_paths(const MultilayerGraph& graph, NodeIndex src, NodeIndex dst, double demand_gbps,
                                const SearchOptions& options) {
  if (src == dst) throw ContractViolation("search endpoints must differ");
  if (src >= graph.node_count() || dst >= graph.node_count()) throw ContractViolation("search endpoint out of range");

  const VertexIndex target = vertex_of(dst, Layer::Router);
  const VertexIndex target_oxc = vertex_of(dst, Layer::Oxc);
  const ExtendContext ctx{demand_gbps, options.port_rate_gbps, options.guard_slots};

  SearchResult result;
  std::vector<PathLabel> pool;
  std::vector<char> alive;
  std::vector<std::vector<std::size_t>> at(graph.vertex_count());
  std::priority_queue<QueueKey, std::vector<QueueKey>, std::greater<>> frontier;

  auto kill = [&](std::size_t id) {
    alive[id] = 0;
    pool[id] = PathLabel{};
  };

  auto insert = [&](PathLabel&& label) {
    const VertexIndex v = label.vertex;
    const bool at_target = v == target;
    auto& bucket = at[v];
    for (std::size_t id : bucket) {
      if ((at_target || same_future(pool[id], label)) && dominates(pool[id], label)) return;
    }
    std::erase_if(bucket, [&](std::size_t id) {
      if ((at_target || same_future(label, pool[id])) && dominates(label, pool[id])) {
        kill(id);
        return true;
      }
      return false;
    });
    const std::size_t id = pool.size();
    pool.push_back(std::move(label));
    alive.push_back(1);
    bucket.push_back(id);
    ++result.labels_created;

    if (options.label_cap != 0 && bucket.size() > options.label_cap) {
      auto worst = std::max_element(bucket.begin(), bucket.end(), [&](std::size_t x, std::size_t y) {
        return std::make_tuple(pool[x].cost(), pool[x].length_km, pool[x].distance_km, x) <
               std::make_tuple(pool[y].cost(), pool[y].length_km, pool[y].distance_km, y);
      });
      const std::size_t evicted = *worst;
      bucket.erase(worst);
      kill(evicted);
      ++result.cap_hits;
      if (evicted == id) return;
    }
    frontier.push({pool[id].cost(), pool[id].length_km, id});
  };

  insert(initial_label(vertex_of(src, Layer::Router), graph.node_count(), graph.slots_per_fiber()));

  while (!frontier.empty()) {
    const std::size_t id = frontier.top().id;
    frontier.pop();
    if (!alive[id] || pool[id].vertex == target) continue;
    const PathLabel current = pool[id];
    for (EdgeIndex e : graph.out_edges(current.vertex)) {
      const MLEdge& edge = graph.edge(e);
      // A segment reaching the destination OXC can only terminate there.
      if (current.vertex == target_oxc && edge.cost.type != EdgeType::OpticalToVirtual) continue;
      if (edge.cost.type == EdgeType::VirtualToOptical) {
        for (std::size_t m = 0; m < edge.cost.modes.size(); ++m) {
          if (auto next = extend_label(current, edge, e, ctx, m)) insert(std::move(*next));
        }
      } else if (auto next = extend_label(current, edge, e, ctx)) {
        insert(std::move(*next));
      }
    }
  }

  auto& finals = at[target];
  std::sort(finals.begin(), finals.end());
  for (std::size_t id : finals) result.labels.push_back(std::move(pool[id]));
  return result;
}

std::optional<PathLabel> select_winner(const std::vector<PathLabel>& labels, Objective objective) {
  if (labels.empty()) return std::nullopt;
  auto key = [objective](const PathLabel& l) {
    if (objective == Objective::Jml) return std::make_pair(objective_jml(l), 0.0);
    auto [len, cost] = objective_ldjml(l);
    return std::make_pair(len, cost);
  };
  auto better = [&](const PathLabel& a, const PathLabel& b) {
    const auto ka = key(a);
    const auto kb = key(b);
    if (ka != kb) return ka < kb;
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    if (a.slot_usage() != b.slot_usage()) return a.slot_usage() < b.slot_usage();
    return a.edges < b.edges;
  };
  const PathLabel* best = &labels.front();
  for (const auto& l : labels) {
    if (better(l, *best)) best = &l;
  }
  return *best;
}

namespace {

using Adjacency = std::vector<std::map<NodeIndex, double>>;

Adjacency collapse_links(const Topology& topo) {
  Adjacency adj(topo.node_count());
  for (const auto& l : topo.links()) {
    for (auto [u, v] : {std::pair{l.a, l.b}, std::pair{l.b, l.a}}) {
      auto it = adj[u].find(v);
      if (it == adj[u].end() || l.length_km < it->second) adj[u][v] = l.length_km;
    }
  }
  return adj;
}

// Shortest path from `from` to `to` whose distances start at `offset`, so
// totals are summed in path order. Ties go to the smaller node sequence.
std::optional<PhysicalPath> shortest_path(const Adjacency& adj, NodeIndex from, NodeIndex to, double offset,
                                          const std::vector<char>& banned_nodes,
                                          const std::set<std::pair<NodeIndex, NodeIndex>>& banned_edges) {
  const std::size_t n = adj.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::vector<NodeIndex>> path(n);
  std::vector<char> done(n, 0);
  dist[from] = offset;
  path[from] = {from};
  while (true) {
    NodeIndex u = n;
    for (NodeIndex i = 0; i < n; ++i) {
      if (!done[i] && dist[i] < kInf && (u == n || dist[i] < dist[u])) u = i;
    }
    if (u == n) return std::nullopt;
    if (u == to) return PhysicalPath{path[u], dist[u]};
    done[u] = 1;
    for (const auto& [v, w] : adj[u]) {
      if (done[v] || banned_nodes[v] || banned_edges.count({u, v})) continue;
      const double cand = dist[u] + w;
      std::vector<NodeIndex> p = path[u];
      p.push_back(v);
      if (cand < dist[v] || (cand == dist[v] && p < path[v])) {
        dist[v] = cand;
        path[v] = std::move(p);
      }
    }
  }
}

}  // namespace

std::vector<PhysicalPath> k_shortest_paths(const Topology& topology, NodeIndex src, NodeIndex dst, std::size_t k) {
  if (k == 0) throw ContractViolation("k must be at least 1");
  std::vector<PhysicalPath> found;
  if (src == dst) return found;
  const Adjacency adj = collapse_links(topology);
  const std::size_t n = adj.size();

  auto first = shortest_path(adj, src, dst, 0.0, std::vector<char>(n, 0), {});
  if (!first) return found;
  found.push_back(std::move(*first));

  auto order = [](const PhysicalPath& a, const PhysicalPath& b) {
    return std::tie(a.length_km, a.nodes) < std::tie(b.length_km, b.nodes);
  };
  std::set<PhysicalPath, decltype(order)> candidates(order);

  while (found.size() < k) {
    const PhysicalPath& prev = found.back();
    double root_len = 0.0;
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      const NodeIndex spur = prev.nodes[i];
      std::set<std::pair<NodeIndex, NodeIndex>> banned_edges;
      for (const auto& p : found) {
        if (p.nodes.size() > i + 1 && std::equal(p.nodes.begin(), p.nodes.begin() + i + 1, prev.nodes.begin())) {
          banned_edges.insert({p.nodes[i], p.nodes[i + 1]});
        }
      }
      std::vector<char> banned_nodes(n, 0);
      for (std::size_t j = 0; j < i; ++j) banned_nodes[prev.nodes[j]] = 1;

      if (auto spur_path = shortest_path(adj, spur, dst, root_len, banned_nodes, banned_edges)) {
        PhysicalPath total;
        total.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + i);
        total.nodes.insert(total.nodes.end(), spur_path->nodes.begin(), spur_path->nodes.end());
        total.length_km = spur_path->length_km;
        if (std::find(found.begin(), found.end(), total) == found.end()) candidates.insert(std::move(total));
      }
      root_len += adj[prev.nodes[i]].at(prev.nodes[i + 1]);
    }
    if (candidates.empty()) break;
    found.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return found;
}

}  // namespace groom
