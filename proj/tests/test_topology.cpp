#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "groom/errors.hpp"
#include "groom/topology.hpp"
#include "oracles.hpp"

using namespace groom;

TEST_CASE("Nobel-Germany has 17 nodes and 26 links") {
  const Topology t = fixtures::nobel_germany();
  CHECK(t.node_count() == 17);
  CHECK(t.link_count() == 26);
  CHECK(t.fiber_count() == 52);
  for (const auto& l : t.links()) CHECK(l.length_km > 0.0);
}

TEST_CASE("two nodes and no links") {
  const Topology t = parse_sndlib("NODES (\n a ( 1 2 )\n b ( 3 4 )\n)\nLINKS (\n)\n");
  CHECK(t.node_count() == 2);
  CHECK(t.links().empty());
}

TEST_CASE("link to a missing node names the endpoint and line") {
  const char* text = "NODES (\n a ( 0 0 )\n b ( 0 1 )\n c ( 0 2 )\n)\nLINKS (\n l1 ( a X ) 0 0 0 0 ( )\n)\n";
  try {
    parse_sndlib(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(std::string(e.what()).find("unknown endpoint X") != std::string::npos);
  }
}

TEST_CASE("malformed inputs") {
  CHECK_THROWS_AS(parse_sndlib("LINKS (\n)\n"), ParseError);
  CHECK_THROWS_AS(parse_sndlib("NODES (\n a ( 0 0 )\n a ( 1 1 )\n)\n"), ParseError);
  CHECK_THROWS_AS(parse_sndlib("NODES (\n a ( 0 0 )\n b ( 1 1 )\n)\nLINKS (\n l ( a a )\n)\n"), ParseError);
  CHECK_THROWS_AS(parse_sndlib("NODES (\n a ( 0 0 )\n"), ParseError);
  CHECK_THROWS_AS(parse_sndlib("NODES (\n a ( 0 x )\n)\n"), ParseError);
  CHECK_THROWS_AS(load_sndlib_file("/nonexistent/topology.txt"), ParseError);
}

TEST_CASE("explicit length overrides the great-circle fallback") {
  const Topology t = parse_sndlib("NODES (\n a ( 0 0 )\n b ( 0 90 )\n)\nLINKS (\n l ( a b ) length 42\n m ( a b )\n)\n");
  CHECK(t.links()[0].length_km == 42.0);
  CHECK(t.links()[1].length_km == doctest::Approx(10007.5).epsilon(1e-4));
}

TEST_CASE("great circle distance") {
  CHECK(great_circle_km({52.52, 13.405}, {52.52, 13.405}) == 0.0);
  const GeoPoint a{48.1, 11.6}, b{53.55, 9.99};
  CHECK(great_circle_km(a, b) == great_circle_km(b, a));
  CHECK(std::abs(great_circle_km({0, 0}, {0, 90}) - 10007.5) <= 1.0);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Topology t = oracle::random_topology(rng, 2 + rng() % 8, 12);
    CHECK(parse_sndlib(serialize_sndlib(t)) == t);
  }
  const Topology nobel = fixtures::nobel_germany();
  CHECK(parse_sndlib(serialize_sndlib(nobel)) == nobel);
}

TEST_CASE("fibers") {
  const Topology t = fixtures::toy_topology();
  const NodeIndex a = t.node_index("A"), c = t.node_index("C");
  const auto f = t.fiber_between(a, c);
  REQUIRE(f);
  CHECK(t.fiber_from(*f) == a);
  CHECK(t.fiber_to(*f) == c);
  const auto back = t.fiber_between(c, a);
  REQUIRE(back);
  CHECK(back->link == f->link);
  CHECK(back->dir != f->dir);
  CHECK_FALSE(t.fiber_between(a, t.node_index("F")));
  CHECK(t.fibers_from(a).size() == 2);
  CHECK_THROWS_AS(t.node_index("Z"), ContractViolation);
}
