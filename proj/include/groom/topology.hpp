#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace groom {

using NodeIndex = std::size_t;

/// One direction of a physical link. Every link yields two fibers with
/// independent spectrum: direction 0 runs a->b, direction 1 runs b->a.
struct FiberId {
  std::uint32_t link = 0;
  std::uint8_t dir = 0;

  std::size_t index() const noexcept { return std::size_t{link} * 2 + dir; }
  static FiberId from_index(std::size_t i) noexcept {
    return {static_cast<std::uint32_t>(i / 2), static_cast<std::uint8_t>(i % 2)};
  }
  friend auto operator<=>(const FiberId&, const FiberId&) = default;
};

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct Node {
  std::string name;
  GeoPoint position;
  friend bool operator==(const Node&, const Node&) = default;
};

struct Link {
  std::string name;
  NodeIndex a = 0;
  NodeIndex b = 0;
  double length_km = 0.0;
  friend bool operator==(const Link&, const Link&) = default;
};

/// Physical topology. Links are undirected; routing works on directed fibers.
class Topology {
 public:
  Topology() = default;

  NodeIndex add_node(std::string name, GeoPoint position);
  std::size_t add_link(std::string name, NodeIndex a, NodeIndex b, double length_km);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t link_count() const noexcept { return links_.size(); }
  std::size_t fiber_count() const noexcept { return links_.size() * 2; }

  std::optional<NodeIndex> find_node(std::string_view name) const;
  NodeIndex node_index(std::string_view name) const;  // throws ContractViolation

  NodeIndex fiber_from(FiberId f) const { return f.dir == 0 ? links_.at(f.link).a : links_.at(f.link).b; }
  NodeIndex fiber_to(FiberId f) const { return f.dir == 0 ? links_.at(f.link).b : links_.at(f.link).a; }
  double fiber_length(FiberId f) const { return links_.at(f.link).length_km; }

  /// Fibers leaving `node`, ordered by fiber index.
  std::vector<FiberId> fibers_from(NodeIndex node) const;

  /// Shortest fiber from `u` to `v` (lowest link index on ties).
  std::optional<FiberId> fiber_between(NodeIndex u, NodeIndex v) const;

  std::string fiber_label(FiberId f) const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
};

/// Haversine distance on a sphere of radius 6371 km.
double great_circle_km(GeoPoint a, GeoPoint b);

/// Parses the SNDlib native subset (NODES and LINKS sections; other sections
/// are skipped). Links without an explicit `length` get the great-circle
/// distance between their endpoints. Errors throw ParseError with the line.
Topology parse_sndlib(std::string_view text);

/// Writes the subset read by parse_sndlib, always with explicit lengths.
std::string serialize_sndlib(const Topology& topology, std::string_view network_name = "network");

Topology load_sndlib_file(const std::string& path);

}  // namespace groom
