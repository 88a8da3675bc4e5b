#pragma once

// Empirical-vs-population gaps of exact W2, sliced W2 and max-sliced W2 for
// pairs of samples from N(0, I) and N(delta e_1, I). This probes the direction
// and ordering of the gaps at small scale; it does not fit asymptotic rates.

#include <cstddef>
#include <string_view>
#include <vector>

#include "maxsliced/exact_ot.hpp"
#include "maxsliced/random.hpp"

namespace maxsliced {

enum class Estimator { kExact, kSliced, kMaxSliced };

std::string_view to_string(Estimator e);

struct ComplexityConfig {
  std::vector<std::size_t> d_grid{2, 8, 32, 128};
  std::vector<std::size_t> n_grid{16, 64, 256};
  std::size_t trials = 20;
  double mean_offset = 0.0;
  std::size_t num_directions = 64;  ///< sliced direction budget
  std::size_t restarts = 8;         ///< max-sliced random restarts
  std::size_t ascent_steps = 200;
  double ascent_rate = 1.0;
  std::size_t exact_cap = kDefaultExactCap;
  Seed seed{};

  void validate() const;
};

struct GapRow {
  Estimator estimator = Estimator::kExact;
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t trial = 0;
  double estimate = 0.0;
  double population = 0.0;
  double gap = 0.0;
};

struct GapTable {
  std::vector<GapRow> rows;

  [[nodiscard]] double median_estimate(Estimator e, std::size_t d, std::size_t n) const;
  [[nodiscard]] double median_gap(Estimator e, std::size_t d, std::size_t n) const;
};

/// Population distance between N(0, I) and N(delta e_1, I) in R^d: delta for
/// exact and max-sliced W2, delta * sqrt(E w_1^2) = delta / sqrt(d) for the
/// sliced W2 with power-mean aggregation.
double population_distance(Estimator e, std::size_t d, double delta);

/// Rows ordered by (d, n, trial, estimator) following the config grids.
GapTable run_complexity_study(const ComplexityConfig& config);

double median(std::vector<double> values);

}  // namespace maxsliced
