#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace textclust {

/**
 * Deterministic random source shared by seed selection, refinement visit
 * orders and the synthetic-corpus generator.
 *
 * Wraps std::mt19937_64 (the 64-bit Mersenne Twister, whose output sequence
 * is fixed by the C++ standard), so a stream is reproducible from a single
 * integer seed on any conforming standard library. Integer draws use masked
 * rejection sampling rather than std::uniform_int_distribution, whose
 * algorithm is implementation-defined.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Raw 64-bit word from the engine.
  std::uint64_t next_word() { return engine_(); }

  /**
   * Uniform integer in [0, n).
   *
   * Draws 64-bit words, truncates them to the smallest all-ones bit mask
   * covering n-1 and redraws until the result lands below n. Each candidate
   * consumes exactly one engine word.
   */
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) {
      throw std::invalid_argument("Rng::uniform_below: n must be positive");
    }
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t x = engine_() & mask;
      if (x < n) {
        return x;
      }
    }
  }

  /// Uniform real in [0, 1) built from the top 53 bits of one engine word.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// In-place Fisher-Yates shuffle driven by uniform_below.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  /// Random permutation of [0, n).
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
      order[i] = i;
    }
    shuffle(order);
    return order;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace textclust
