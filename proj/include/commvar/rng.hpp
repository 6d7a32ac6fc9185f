#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace commvar {

// Seeded stream of uniform draws.  mt19937_64 output is pinned by the
// standard, and the int draws below are hand-rolled rejection sampling,
// so a seed reproduces the same bytes on every platform; the stdlib
// distribution objects carry no such guarantee.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform on [0, m).
  std::uint64_t below(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t rem = (std::uint64_t(-1) % m + 1) % m;  // 2^64 mod m
    if (rem == 0) return gen_() % m;
    const std::uint64_t limit = std::uint64_t(0) - rem;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % m;
  }

  // Uniform on [lo, hi], inclusive.
  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace commvar
