#pragma once

#include <array>
#include <cstdint>

namespace lumen {

// xoshiro256** with splitmix64 seeding. The standard <random> engines are
// portable but the distributions are not, and simulator state must replay
// bit-identically across platforms, so all draws go through this.
struct Rng {
  std::array<std::uint64_t, 4> s{1, 2, 3, 4};

  Rng() = default;
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // uniform in [0, bound), bound >= 1
  std::uint32_t below(std::uint32_t bound);

  // uniform in [0, 1)
  double unit();

  bool operator==(const Rng&) const = default;
};

// Deterministic stream splitting (per-episode and per-trial seeds).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace lumen
