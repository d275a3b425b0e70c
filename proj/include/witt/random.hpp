#pragma once

#include <cstdint>
#include <random>

namespace witt {

/// Seeded generator whose draws do not depend on the standard library's
/// distribution implementations, so a seed reproduces across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  /// Uniform nonzero integer in [-bound, bound].
  std::int64_t nonzero(std::int64_t bound) {
    std::int64_t v;
    do {
      v = uniform(-bound, bound);
    } while (v == 0);
    return v;
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace witt
