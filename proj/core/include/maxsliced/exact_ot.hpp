#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxsliced/types.hpp"

namespace maxsliced {

/// Bijective matching source i -> target matching[i] and its mean cost.
struct Assignment {
  std::vector<std::size_t> matching;
  double cost = 0.0;
};

/// Minimum-cost perfect matching for a dense n x n row-major cost matrix
/// (shortest augmenting path with potentials, O(n^3)). Returns the matching
/// and the *total* cost.
Assignment solve_assignment(std::span<const double> cost, std::size_t n);

struct ExactW2 {
  double value = 0.0;  ///< sqrt of the optimal mean squared Euclidean cost
  Assignment assignment;
};

inline constexpr std::size_t kDefaultExactCap = 2048;

/// Exact W2 between two equal-size clouds by optimal assignment.
/// Throws InvalidArgument when sizes or dimensions differ or n > max_points.
ExactW2 w2_exact(const PointCloud& source, const PointCloud& target,
                 std::size_t max_points = kDefaultExactCap);

/// (1/n) sum_i ||source_i - target_{matching[i]}||^2.
double matching_cost(const PointCloud& source, const PointCloud& target,
                     std::span<const std::size_t> matching);

}  // namespace maxsliced
