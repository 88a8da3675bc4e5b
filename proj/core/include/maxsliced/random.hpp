#pragma once

// Counter-based randomness. Every random quantity in the library is drawn
// from a stream identified by (root seed, stream index), so results do not
// depend on evaluation order or thread count.

#include <array>
#include <cstdint>
#include <limits>

namespace maxsliced {

/// Root seed of an experiment.
struct Seed {
  std::uint64_t value = 0;

  /// Deterministically derives an unrelated root for a sub-experiment.
  [[nodiscard]] Seed derive(std::uint64_t tag) const noexcept;

  friend bool operator==(const Seed&, const Seed&) = default;
};

struct StreamKey {
  Seed root;
  std::uint64_t stream = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Philox4x32-10 keyed by the root seed, with the stream index in the upper
/// half of the counter. Satisfies UniformRandomBitGenerator.
class Philox {
 public:
  using result_type = std::uint64_t;

  explicit Philox(StreamKey key) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// The raw Philox4x32-10 bijection.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

  /// Uniform double in the open interval (0, 1), 53 bits of resolution.
  double uniform() noexcept;
  /// Standard normal variate (Box-Muller, both branches used).
  double normal() noexcept;
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> out_{};
  int next_word_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace maxsliced
