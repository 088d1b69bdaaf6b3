#pragma once

#include <cstdint>
#include <span>

namespace objestures {

/// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-ratio
/// increment 0x9E3779B97F4A7C15 and each output is a fixed mix of the new
/// state, so draw n from seed s is mix(s + n * increment) on any platform.
///
/// Derived draws are specified here too, so other implementations can
/// reproduce them:
///   uniform()      : (next() >> 11) * 2^-53, in [0, 1)
///   below(n)       : rejection sampling on next() % n with threshold
///                    (2^64 - n) % n
///   gaussian()     : Box-Muller, sqrt(-2 ln(1 - u1)) * cos(2 pi u2), one
///                    value per two uniforms (no caching)
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  double uniform();
  double uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (next() >> 63) != 0; }
  double gaussian();

  /// Fisher-Yates from the back, using below().
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace objestures
