#pragma once

#include <cstddef>
#include <vector>

#include "maxsliced/random.hpp"
#include "maxsliced/types.hpp"

namespace maxsliced {

/// Inner product of every point with `direction`, in point order.
std::vector<double> project(const PointCloud& cloud, const UnitDirection& direction);

/// A standard-normal vector normalized to unit length, drawn from `key`.
UnitDirection random_direction(std::size_t dim, StreamKey key);

/// k directions uniform on S^{d-1}; direction i is drawn from stream i of
/// `seed`, so any subset can be regenerated independently.
DirectionSet sample_directions(std::size_t k, std::size_t dim, Seed seed);

/// E|w_1|^p for w uniform on S^{d-1}:
/// Gamma(d/2) Gamma((p+1)/2) / (sqrt(pi) Gamma((d+p)/2)).
double sphere_abs_moment(std::size_t dim, double p);

}  // namespace maxsliced
