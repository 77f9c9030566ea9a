// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_RNG_HPP_
#define BCL_RNG_HPP_

#include <cstdint>

namespace bcl {

// splitmix64; identical streams on every platform for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [lo, hi]
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() %
                                          static_cast<std::uint64_t>(hi - lo + 1));
  }

  int sign() { return (next() & 1u) ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace bcl

#endif  // BCL_RNG_HPP_
