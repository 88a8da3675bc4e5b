#pragma once

#include <utility>
#include <vector>

#include "maxsliced/ot1d.hpp"
#include "maxsliced/types.hpp"

namespace maxsliced {

enum class Aggregation {
  kPowerMean,       ///< [mean_w W_p^p]^(1/p)
  kMeanOfDistances  ///< mean_w W_p
};

struct SlicedReport {
  double value = 0.0;
  std::vector<std::pair<UnitDirection, double>> per_direction;
  Aggregation aggregation = Aggregation::kPowerMean;

  /// Largest per-direction distance.
  [[nodiscard]] double max_term() const;
};

/// Aggregates per-direction distances as `aggregation` prescribes.
double aggregate(std::span<const double> distances, Order order, Aggregation aggregation);

/// Monte-Carlo sliced Wasserstein-p over `directions`. per_direction is in
/// direction-index order.
SlicedReport sliced_distance(const PointCloud& source, const PointCloud& target,
                             const DirectionSet& directions, Order order,
                             Aggregation aggregation = Aggregation::kPowerMean);

}  // namespace maxsliced
