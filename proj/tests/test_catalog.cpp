#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "groom/catalog.hpp"
#include "groom/errors.hpp"

using namespace groom;

TEST_CASE("default catalog") {
  const Catalog c = default_catalog();
  REQUIRE(c.modules.size() == 1);
  CHECK(c.modules[0].cost == 3.0);
  CHECK(c.modules[0].modes.size() == 3);
  CHECK(c.router_port_cost == 1.0);
  CHECK(c.router_port_rate_gbps == 400.0);
  CHECK(c.slots_per_fiber == 320);
  CHECK(c.max_rate_gbps() == 400.0);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("shipped default file matches the built-in catalog") {
  CHECK(load_catalog_file(fixtures::source_path("data/catalog-default.json")) == default_catalog());
}

TEST_CASE("json round trip") {
  Catalog c = default_catalog();
  c.router_ports_per_node = 8;
  c.modules[0].per_node = 4;
  c.guard_band_slots = 1;
  CHECK(catalog_from_json(catalog_to_json(c)) == c);
}

TEST_CASE("validation rejects bad catalogs") {
  auto broken = [](auto mutate) {
    Catalog c = default_catalog();
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(broken([](Catalog& c) { c.modules.clear(); }).validate(), ParseError);
  CHECK_THROWS_AS(broken([](Catalog& c) { c.slots_per_fiber = 0; }).validate(), ParseError);
  CHECK_THROWS_AS(broken([](Catalog& c) { c.modules[0].modes[0].slots = 0; }).validate(), ParseError);
  CHECK_THROWS_AS(broken([](Catalog& c) { c.modules[0].modes[0].slots = 400; }).validate(), ParseError);
  CHECK_THROWS_AS(broken([](Catalog& c) { c.modules.push_back(c.modules[0]); }).validate(), ParseError);
  CHECK_THROWS_AS(broken([](Catalog& c) { c.modules[0].cost = -1.0; }).validate(), ParseError);
  // 100G with less reach than 200G and more slots is never worth using.
  CHECK_THROWS_AS(broken([](Catalog& c) { c.modules[0].modes[0] = {100, 1000, 7}; }).validate(), ParseError);
}

TEST_CASE("malformed json") {
  CHECK_THROWS_AS(catalog_from_json(nlohmann::json{{"slots_per_fiber", "many"}}), ParseError);
  CHECK_THROWS_AS(load_catalog_file("/nonexistent.json"), ParseError);
}

TEST_CASE("find_module") {
  const Catalog c = fixtures::toy_catalog();
  CHECK(c.find_module("tm") == 0u);
  CHECK_FALSE(c.find_module("nope"));
}
