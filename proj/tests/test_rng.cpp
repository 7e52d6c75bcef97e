#include <doctest.h>

#include <cstdint>

#include "lumen/rng.hpp"

using lumen::Rng;

TEST_CASE("rng streams are deterministic per seed") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  bool all_equal = true;
  Rng a2(42);
  for (int i = 0; i < 100; ++i)
    if (a2.next() != c.next()) all_equal = false;
  CHECK_FALSE(all_equal);
}

TEST_CASE("below() stays in range and covers the range") {
  Rng rng(7);
  bool seen[10] = {};
  for (int i = 0; i < 10000; ++i) {
    std::uint32_t v = rng.below(10);
    REQUIRE(v < 10);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
  CHECK(rng.below(1) == 0);
}

TEST_CASE("unit() lies in [0,1)") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("mix_seed separates streams") {
  CHECK(lumen::mix_seed(1, 0) != lumen::mix_seed(1, 1));
  CHECK(lumen::mix_seed(1, 0) != lumen::mix_seed(2, 0));
  CHECK(lumen::mix_seed(5, 3) == lumen::mix_seed(5, 3));
}
