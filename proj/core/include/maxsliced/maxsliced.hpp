#pragma once

// Max-sliced Wasserstein-2: max over unit w of W2 between the projections of
// two clouds onto w. Exact in the plane (grid_oracle_2d); elsewhere found by
// local ascent or approximated by a surrogate separating direction.

#include <cstddef>
#include <span>

#include "maxsliced/discriminator.hpp"
#include "maxsliced/random.hpp"
#include "maxsliced/types.hpp"

namespace maxsliced {

enum class SearchStrategy { kGridOracle2d, kSphereAscent, kMomentSeparator, kLogisticSurrogate };

struct MaxSlicedResult {
  UnitDirection direction;
  double value = 0.0;  ///< W2 along `direction`
  SearchStrategy strategy = SearchStrategy::kGridOracle2d;
  std::size_t iterations = 0;
  std::size_t reinitializations = 0;
};

/// W2 between project(source, w) and project(target, w).
double projected_w2(const PointCloud& source, const PointCloud& target, const UnitDirection& w);

struct GridOracleOptions {
  std::size_t n_angles = 3600;
  /// Refine the grid maximum to the exact maximum over the half circle.
  bool refine = true;
};

/// Max-sliced W2 in the plane. Evaluates angles i*pi/n_angles and, with
/// `refine`, closes the remaining gap exactly: between consecutive angles at
/// which either projected sort order changes, W2^2 is a quadratic form in
/// (cos t, sin t), maximized in closed form. Brackets that cannot beat the
/// incumbent under the Lipschitz bound of t -> W2 are skipped.
/// Ties on the grid go to the smallest angle.
MaxSlicedResult grid_oracle_2d(const PointCloud& source, const PointCloud& target,
                               GridOracleOptions options = {});

/// (2/n) sum_i (w . v_i) v_i with v_i = source_(i) - target_(i) paired by
/// sorted rank along w: the gradient of w -> W2^2 for a fixed matching.
std::vector<double> projected_w2_squared_gradient(const PointCloud& source,
                                                  const PointCloud& target,
                                                  const UnitDirection& w);

/// Projected gradient ascent of w -> W2^2 on the sphere from `init`.
/// Steps that do not improve are retried with half the rate; accepted steps
/// grow it. A direction along which the projections coincide is replaced by
/// a random one drawn from `reinit_seed`. Returns the best direction seen, a
/// local maximum only.
MaxSlicedResult sphere_ascent(const PointCloud& source, const PointCloud& target,
                              const UnitDirection& init, std::size_t steps, double rate,
                              Seed reinit_seed = {});

/// Best of sphere_ascent from every direction in `inits` plus `restarts`
/// seeded random directions.
MaxSlicedResult sphere_ascent_restarts(const PointCloud& source, const PointCloud& target,
                                       std::size_t restarts, std::size_t steps, double rate,
                                       Seed seed, std::span<const UnitDirection> inits = {});

/// Normalized mean(source) - mean(target). Throws DegenerateDirection when the
/// means coincide to within 1e-12.
UnitDirection moment_separator_direction(const PointCloud& source, const PointCloud& target);

struct LogisticOptions {
  std::size_t steps = 200;
  double rate = 0.5;
  /// Cap on the joint gradient norm over (w, c, A, b).
  double grad_clip = 10.0;
};

/// Class-averaged log-likelihood of source as real and target as fake:
/// mean_D ln s(w.h(x)+c) + mean_F ln(1 - s(w.h(x)+c)).
double logistic_objective(const PointCloud& real, const PointCloud& fake,
                          const Discriminator& disc);

/// One clipped ascent step on logistic_objective over the discriminator's
/// trainable parameters; w is renormalized afterwards.
void logistic_step(const PointCloud& real, const PointCloud& fake, Discriminator& disc,
                   double rate, double grad_clip);

struct SurrogateResult {
  UnitDirection direction;  ///< in feature space
  Discriminator discriminator;
};

/// Runs `options.steps` logistic ascent steps starting from `init`.
SurrogateResult logistic_surrogate_direction(const PointCloud& real, const PointCloud& fake,
                                             Discriminator init, LogisticOptions options = {});

enum class UpperStrategy { kGridOracle, kSphereAscent };

struct BoundsOptions {
  UpperStrategy upper = UpperStrategy::kGridOracle;
  GridOracleOptions grid{};
  std::size_t restarts = 8;
  std::size_t steps = 200;
  double rate = 1.0;
  Seed seed{};
};

struct BoundsReport {
  double lower = 0.0;  ///< ||mean(D) - mean(F)||^2
  double mid = 0.0;    ///< W2^2 along the moment-separator direction
  double upper = 0.0;  ///< squared max-sliced value from the chosen strategy
  UnitDirection direction;
  bool fallback = false;  ///< means coincided; a seeded random direction was used
};

/// lower <= mid <= upper. The chain is exact for the grid oracle; with sphere
/// ascent the upper value starts from the separator direction so upper >= mid.
BoundsReport check_bounds(const PointCloud& source, const PointCloud& target,
                          BoundsOptions options = {});

}  // namespace maxsliced
