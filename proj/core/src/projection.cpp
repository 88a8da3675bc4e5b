#include "maxsliced/projection.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "maxsliced/errors.hpp"

namespace maxsliced {

std::vector<double> project(const PointCloud& cloud, const UnitDirection& direction) {
  if (cloud.dim() != direction.dim()) {
    throw InvalidArgument("project: cloud has dimension " + std::to_string(cloud.dim()) +
                          " but direction has dimension " + std::to_string(direction.dim()));
  }
  const auto w = direction.components();
  std::vector<double> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) acc += p[k] * w[k];
    out[i] = acc;
  }
  return out;
}

UnitDirection random_direction(std::size_t dim, StreamKey key) {
  if (dim == 0) throw InvalidArgument("random_direction: dimension must be at least 1");
  Philox rng(key);
  std::vector<double> v(dim);
  for (;;) {
    double sq = 0.0;
    for (double& c : v) {
      c = rng.normal();
      sq += c * c;
    }
    // Vanishing draws are astronomically rare; redraw from the same stream.
    if (sq > 1e-200) break;
  }
  return UnitDirection::normalized(v);
}

DirectionSet sample_directions(std::size_t k, std::size_t dim, Seed seed) {
  if (k == 0) throw InvalidArgument("sample_directions: k must be at least 1");
  if (dim == 0) throw InvalidArgument("sample_directions: dimension must be at least 1");
  std::vector<UnitDirection> dirs;
  dirs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) dirs.push_back(random_direction(dim, {seed, i}));
  return DirectionSet(std::move(dirs), seed, DirectionGeneration::kGaussianNormalized);
}

double sphere_abs_moment(std::size_t dim, double p) {
  if (dim == 0) throw InvalidArgument("sphere_abs_moment: dimension must be at least 1");
  if (!(p >= 0.0)) throw InvalidArgument("sphere_abs_moment: p must be nonnegative");
  const double d = static_cast<double>(dim);
  const double log_m = std::lgamma(0.5 * d) + std::lgamma(0.5 * (p + 1.0)) -
                       0.5 * std::log(std::numbers::pi) - std::lgamma(0.5 * (d + p));
  return std::exp(log_m);
}

}  // namespace maxsliced
