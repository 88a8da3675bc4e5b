#include "maxsliced/sliced.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxsliced/errors.hpp"
#include "maxsliced/projection.hpp"

namespace maxsliced {

double SlicedReport::max_term() const {
  double best = 0.0;
  for (const auto& [w, v] : per_direction) best = std::max(best, v);
  return best;
}

double aggregate(std::span<const double> distances, Order order, Aggregation aggregation) {
  if (distances.empty()) throw InvalidArgument("aggregate: no distances");
  const double p = order.value();
  double acc = 0.0;
  if (aggregation == Aggregation::kMeanOfDistances) {
    for (double v : distances) acc += v;
    return acc / static_cast<double>(distances.size());
  }
  for (double v : distances) acc += p == 2.0 ? v * v : std::pow(v, p);
  acc /= static_cast<double>(distances.size());
  return p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p);
}

SlicedReport sliced_distance(const PointCloud& source, const PointCloud& target,
                             const DirectionSet& directions, Order order,
                             Aggregation aggregation) {
  if (source.dim() != target.dim()) {
    throw InvalidArgument("sliced_distance: cloud dimensions differ (" +
                          std::to_string(source.dim()) + " vs " +
                          std::to_string(target.dim()) + ")");
  }
  if (directions.dim() != source.dim()) {
    throw InvalidArgument("sliced_distance: directions have dimension " +
                          std::to_string(directions.dim()) + " but clouds have dimension " +
                          std::to_string(source.dim()));
  }
  SlicedReport report;
  report.aggregation = aggregation;
  report.per_direction.reserve(directions.size());
  std::vector<double> distances;
  distances.reserve(directions.size());
  for (const auto& w : directions) {
    const double v = sorted_wp(project(source, w), project(target, w), order);
    report.per_direction.emplace_back(w, v);
    distances.push_back(v);
  }
  report.value = aggregate(distances, order, aggregation);
  return report;
}

}  // namespace maxsliced
