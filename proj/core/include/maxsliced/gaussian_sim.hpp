#pragma once

// Learning the mean of N(beta e, I) against N(0, I) by gradient descent on
// the sliced or max-sliced distance, with exact (infinite-sample) marginals.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "maxsliced/random.hpp"
#include "maxsliced/types.hpp"

namespace maxsliced {

enum class SimMode { kSliced, kMaxSliced };

struct GaussianSimConfig {
  std::size_t d = 100;
  double beta0 = 1.0;
  std::optional<UnitDirection> e_hat;  ///< defaults to the first basis vector
  double alpha = 0.1;
  std::size_t num_directions = 10;
  SimMode mode = SimMode::kSliced;
  bool resample = true;  ///< fresh directions every step
  std::size_t max_steps = 100000;
  Seed seed{};

  void validate() const;
  [[nodiscard]] UnitDirection direction() const;
};

struct Trajectory {
  std::vector<std::pair<std::size_t, double>> betas;
  double decrement_mean = 0.0;  ///< average |delta beta| per step
  bool converged = false;       ///< reached |beta| <= alpha before max_steps

  [[nodiscard]] std::size_t steps() const noexcept { return betas.size() - 1; }
};

/// W2 between N(0,1) and N(beta e.w, 1), the marginals along w.
double projected_w2_gaussian(double beta, const UnitDirection& e_hat, const UnitDirection& w);

/// Runs until |beta| <= alpha or max_steps. Sliced mode steps by
/// alpha * mean_w |e.w| over a random direction set; max-sliced mode uses w = e.
Trajectory run_simulation(const GaussianSimConfig& config);

}  // namespace maxsliced
