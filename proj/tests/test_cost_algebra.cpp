#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "groom/cost_algebra.hpp"
#include "groom/errors.hpp"

using namespace groom;

namespace {

constexpr std::size_t kSlots = 16;
const ExtendContext ctx{100.0, 400.0, 0};

MLEdge transmit(NodeIndex n, std::vector<ModeTuple> modes, std::size_t type = 0, double cost = 3.0) {
  MLEdge e;
  e.from = vertex_of(n, Layer::Router);
  e.to = vertex_of(n, Layer::Oxc);
  e.cost.type = EdgeType::VirtualToOptical;
  e.cost.modes = std::move(modes);
  e.cost.module_cost = cost;
  e.cost.port_cost = 1.0;
  e.cost.free_slots = SlotMask(kSlots, true);
  e.module_type = type;
  return e;
}

MLEdge receive(NodeIndex n, std::size_t type = 0, double cost = 3.0) {
  MLEdge e = transmit(n, {}, type, cost);
  std::swap(e.from, e.to);
  e.cost.type = EdgeType::OpticalToVirtual;
  return e;
}

MLEdge optical(NodeIndex a, NodeIndex b, double km, std::string_view free = "") {
  MLEdge e;
  e.from = vertex_of(a, Layer::Oxc);
  e.to = vertex_of(b, Layer::Oxc);
  e.cost.type = EdgeType::Optical;
  e.cost.distance_km = km;
  e.cost.length_km = km;
  e.cost.free_slots = free.empty() ? SlotMask(kSlots, true) : SlotMask::from_string(free);
  e.fiber = FiberId{static_cast<std::uint32_t>(a * 10 + b), 0};
  return e;
}

MLEdge virtual_edge(NodeIndex a, NodeIndex b, double km) {
  MLEdge e;
  e.from = vertex_of(a, Layer::Router);
  e.to = vertex_of(b, Layer::Router);
  e.cost.type = EdgeType::Virtual;
  e.cost.is_virtual = true;
  e.cost.length_km = km;
  e.cost.free_slots = SlotMask(kSlots, true);
  e.cost.lightpath = IntentId{7};
  return e;
}

PathLabel start(NodeIndex n = 0) { return initial_label(vertex_of(n, Layer::Router), 4, kSlots); }

PathLabel with(double cost, double distance, bool virt, double rate, std::string_view free) {
  PathLabel l = start();
  l.module_cost = cost;
  l.distance_km = distance;
  l.uses_virtual = virt;
  if (rate > 0) l.chosen.push_back({0, {rate, 1000, 1}});
  l.free_slots = SlotMask::from_string(free);
  return l;
}

}  // namespace

TEST_CASE("initial label") {
  const PathLabel l = start(2);
  CHECK(l.distance_km == 0.0);
  CHECK(l.cost() == 0.0);
  CHECK(l.length_km == 0.0);
  CHECK_FALSE(l.uses_virtual);
  CHECK(l.vertex == vertex_of(2, Layer::Router));
  CHECK(start(2) == l);
  CHECK_FALSE(dominates(l, l));
}

TEST_CASE("reach within and beyond a mode") {
  const auto t = extend_label(start(), transmit(0, {{100, 3000, 4}}), 0, ctx);
  REQUIRE(t);
  CHECK(t->cost() == 4.0);
  const auto o = extend_label(*t, optical(0, 1, 1000), 1, ctx);
  REQUIRE(o);
  CHECK(o->distance_km == 1000.0);
  CHECK(o->open_modes.size() == 1);
  CHECK_FALSE(extend_label(*o, optical(1, 2, 2500), 2, ctx));
}

TEST_CASE("virtual edge on a fresh label") {
  const auto v = extend_label(start(), virtual_edge(0, 1, 500), 0, ctx);
  REQUIRE(v);
  CHECK(v->length_km == 500.0);
  CHECK(v->uses_virtual);
  CHECK(v->cost() == 0.0);
  CHECK(v->max_rate() == 0.0);
  CHECK(v->lightpaths == std::vector<IntentId>{IntentId{7}});
}

TEST_CASE("rate filter at transmit") {
  const MLEdge tx = transmit(0, {{100, 3000, 4}, {200, 1500, 6}, {800, 100, 8}});
  CHECK_FALSE(extend_label(start(), tx, 0, ExtendContext{150, 400, 0}, 0));
  CHECK(extend_label(start(), tx, 0, ExtendContext{150, 400, 0}, 1));
  CHECK_FALSE(extend_label(start(), tx, 0, ExtendContext{150, 400, 0}, 2));
  CHECK_THROWS_AS(extend_label(start(), tx, 0, ctx, 3), ContractViolation);
}

TEST_CASE("spectrum continuity") {
  auto l = extend_label(start(), transmit(0, {{100, 3000, 3}}), 0, ctx);
  l = extend_label(*l, optical(0, 1, 100, "1111000000000000"), 1, ctx);
  REQUIRE(l);
  const auto prev_free = l->free_slots;
  CHECK_FALSE(extend_label(*l, optical(1, 2, 100, "0000111111111111"), 2, ctx));
  const auto narrow = extend_label(*l, optical(1, 2, 100, "0111111111111111"), 2, ctx);
  REQUIRE(narrow);
  CHECK(narrow->free_slots.is_subset_of(prev_free));
  CHECK(narrow->free_slots.to_string() == "0111000000000000");
  CHECK_FALSE(extend_label(*l, optical(1, 2, 100, "1011111111111111"), 2, ctx));
}

TEST_CASE("receive closes the segment") {
  auto l = extend_label(start(), transmit(0, {{100, 3000, 4}}), 0, ctx);
  CHECK_FALSE(extend_label(*l, receive(0), 1, ctx));  // no fiber yet
  l = extend_label(*l, optical(0, 1, 700), 1, ctx);
  CHECK_FALSE(extend_label(*l, receive(1, 1), 2, ctx));  // other module type
  const auto r = extend_label(*l, receive(1), 2, ctx);
  REQUIRE(r);
  CHECK(r->cost() == 8.0);
  CHECK(r->distance_km == 0.0);
  CHECK(r->length_km == 700.0);
  CHECK_FALSE(r->has_open_segment());
  REQUIRE(r->segments.size() == 1);
  CHECK(r->segments[0].nodes == std::vector<NodeIndex>{0, 1});
  CHECK(r->max_rate() == 100.0);
  CHECK(r->after_receive);
}

TEST_CASE("node simplicity") {
  auto l = extend_label(start(), transmit(0, {{100, 3000, 4}}), 0, ctx);
  l = extend_label(*l, optical(0, 1, 100), 1, ctx);
  CHECK_FALSE(extend_label(*l, optical(1, 0, 100), 2, ctx));
  const auto v = extend_label(start(), virtual_edge(0, 1, 10), 0, ctx);
  REQUIRE(v);
  CHECK_FALSE(extend_label(*v, virtual_edge(1, 0, 10), 1, ctx));
}

TEST_CASE("regeneration needs spare pools") {
  auto l = extend_label(start(), transmit(0, {{100, 3000, 4}}), 0, ctx);
  l = extend_label(*l, optical(0, 1, 100), 1, ctx);
  l = extend_label(*l, receive(1), 2, ctx);
  MLEdge tx = transmit(1, {{100, 3000, 4}});
  tx.ports_left = 1;
  CHECK_FALSE(extend_label(*l, tx, 3, ctx));
  tx.ports_left = 2;
  tx.modules_left = 1;
  CHECK_FALSE(extend_label(*l, tx, 3, ctx));
  tx.modules_left = 2;
  CHECK(extend_label(*l, tx, 3, ctx));
  MLEdge other = transmit(1, {{100, 3000, 4}}, 1);
  other.modules_left = 1;
  CHECK(extend_label(*l, other, 3, ctx));
}

TEST_CASE("structural misuse") {
  const auto open = extend_label(start(), transmit(0, {{100, 3000, 4}}), 0, ctx);
  CHECK_THROWS_AS(extend_label(start(), optical(0, 1, 10), 0, ctx), ContractViolation);
  CHECK_THROWS_AS(extend_label(start(), receive(0), 0, ctx), ContractViolation);
  CHECK_THROWS_AS(extend_label(*open, transmit(0, {{100, 3000, 4}}), 0, ctx), ContractViolation);
  CHECK_THROWS_AS(extend_label(start(1), transmit(0, {{100, 3000, 4}}), 0, ctx), ContractViolation);
}

TEST_CASE("dominance examples") {
  const PathLabel b = with(5, 100, false, 200, "1111");
  CHECK_FALSE(dominates(b, b));
  const PathLabel a = with(4, 100, false, 200, "1111");
  CHECK(dominates(a, b));
  CHECK_FALSE(dominates(b, a));
  const PathLabel narrow = with(4, 100, false, 200, "1110");
  CHECK_FALSE(dominates(narrow, b));
  CHECK_FALSE(dominates(b, narrow));
  CHECK(dominates(with(5, 100, false, 200, "1111"), with(5, 100, true, 200, "1111")));
  CHECK(dominates(with(5, 100, false, 400, "1111"), with(5, 100, false, 200, "1111")));
  CHECK(dominates(with(5, 90, false, 200, "1111"), with(5, 100, false, 200, "1111")));
}

TEST_CASE("dominance agrees with the five clauses and is a strict partial order") {
  std::mt19937_64 rng(19);
  std::vector<PathLabel> labels;
  for (int i = 0; i < 120; ++i) {
    std::string free(4, '0');
    for (auto& c : free) c = rng() % 3 ? '1' : '0';
    labels.push_back(with(rng() % 3, 100.0 * (rng() % 3), rng() % 2, 100.0 * (rng() % 3), free));
  }
  auto reference = [](const PathLabel& a, const PathLabel& b) {
    const std::string fa = a.free_slots.to_string(), fb = b.free_slots.to_string();
    bool superset = true, wider = false;
    for (std::size_t i = 0; i < fa.size(); ++i) {
      superset = superset && !(fb[i] == '1' && fa[i] == '0');
      wider = wider || (fa[i] == '1' && fb[i] == '0');
    }
    const bool le = a.distance_km <= b.distance_km && a.cost() <= b.cost() && (!a.uses_virtual || b.uses_virtual) &&
                    a.max_rate() >= b.max_rate() && superset;
    const bool strict = a.distance_km < b.distance_km || a.cost() < b.cost() || (!a.uses_virtual && b.uses_virtual) ||
                        a.max_rate() > b.max_rate() || wider;
    return le && strict;
  };
  for (const auto& a : labels) {
    CHECK_FALSE(dominates(a, a));
    for (const auto& b : labels) {
      CHECK(dominates(a, b) == reference(a, b));
      if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
      for (const auto& c : labels) {
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
      }
    }
  }
}

TEST_CASE("extension is monotone per edge type") {
  auto l = extend_label(start(), transmit(0, {{100, 3000, 2}}), 0, ctx);
  const PathLabel before = *l;
  l = extend_label(*l, optical(0, 1, 300, "1111111111110000"), 1, ctx);
  CHECK(l->cost() >= before.cost());
  CHECK(l->length_km >= before.length_km);
  CHECK(l->distance_km >= before.distance_km);
  CHECK(l->free_slots.is_subset_of(before.free_slots));
  const PathLabel mid = *l;
  l = extend_label(*l, receive(1), 2, ctx);
  CHECK(l->cost() >= mid.cost());
  CHECK(l->length_km >= mid.length_km);
}

TEST_CASE("objectives") {
  PathLabel l = start();
  l.module_cost = 3;
  l.port_cost = 2;
  CHECK(objective_jml(l) == 5.0);
  PathLabel far = start(), near = start();
  far.length_km = 1000;
  far.module_cost = 8;
  near.length_km = 900;
  near.module_cost = 20;
  CHECK(objective_ldjml(near) < objective_ldjml(far));
  near.length_km = 1000;
  CHECK(objective_ldjml(far) < objective_ldjml(near));
  const auto open = extend_label(start(), transmit(0, {{100, 3000, 4}}), 0, ctx);
  CHECK_THROWS_AS(objective_jml(*open), ContractViolation);
  CHECK_THROWS_AS(objective_ldjml(*open), ContractViolation);
}
