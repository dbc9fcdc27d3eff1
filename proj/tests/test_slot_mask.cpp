#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "groom/slot_mask.hpp"
#include "oracles.hpp"

using groom::SlotMask;

TEST_CASE("construction and fill") {
  SlotMask m(70);
  CHECK(m.size() == 70);
  CHECK(m.none());
  m.fill(true);
  CHECK(m.all());
  CHECK(m.count() == 70);
  m.reset(69);
  CHECK(m.count() == 69);
  CHECK_FALSE(m.test(69));
}

TEST_CASE("string round trip") {
  const SlotMask m = SlotMask::from_string("110111");
  CHECK(m.to_string() == "110111");
  CHECK(m.count() == 5);
  CHECK_THROWS(SlotMask::from_string("10x"));
}

TEST_CASE("and and subset") {
  const SlotMask a = SlotMask::from_string("1101");
  const SlotMask b = SlotMask::from_string("0111");
  CHECK((a & b).to_string() == "0101");
  CHECK((a & b).is_subset_of(a));
  CHECK_FALSE(a.is_subset_of(b));
}

TEST_CASE("first_run matches an exhaustive scan") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 140;
    SlotMask m(n);
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
      bits[i] = rng() % 4 != 0;
      m.set(i, bits[i]);
    }
    const std::size_t len = 1 + rng() % 9;
    CHECK(m.first_run(len) == oracle::first_fit_scan(bits, len));
  }
}

TEST_CASE("first_run crosses word boundaries") {
  SlotMask m(130);
  for (std::size_t i = 60; i < 70; ++i) m.set(i);
  CHECK(m.first_run(10) == 60u);
  CHECK_FALSE(m.first_run(11).has_value());
}
