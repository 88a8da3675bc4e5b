#include "maxsliced/exact_ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxsliced/errors.hpp"

namespace maxsliced {

Assignment solve_assignment(std::span<const double> cost, std::size_t n) {
  if (n == 0) throw InvalidArgument("solve_assignment: empty problem");
  if (cost.size() != n * n) throw InvalidArgument("solve_assignment: cost matrix is not n x n");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based; column 0 is the virtual root of each augmenting tree.
  std::vector<double> row_pot(n + 1, 0.0), col_pot(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, 0), prev_col(n + 1, 0);
  std::vector<double> slack(n + 1);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    std::size_t col0 = 0;
    std::fill(slack.begin(), slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t i0 = row_of_col[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      const double* cost_row = cost.data() + (i0 - 1) * n;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = cost_row[j - 1] - row_pot[i0] - col_pot[j];
        if (reduced < slack[j]) {
          slack[j] = reduced;
          prev_col[j] = col0;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          row_pot[row_of_col[j]] += delta;
          col_pot[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[col0] != 0);
    do {
      const std::size_t col1 = prev_col[col0];
      row_of_col[col0] = row_of_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  Assignment out;
  out.matching.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.matching[row_of_col[j] - 1] = j - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += cost[i * n + out.matching[i]];
  out.cost = total;
  return out;
}

double matching_cost(const PointCloud& source, const PointCloud& target,
                     std::span<const std::size_t> matching) {
  if (source.size() != target.size() || matching.size() != source.size()) {
    throw InvalidArgument("matching_cost: size mismatch");
  }
  if (source.dim() != target.dim()) throw InvalidArgument("matching_cost: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto a = source.point(i);
    const auto b = target.point(matching[i]);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double diff = a[k] - b[k];
      acc += diff * diff;
    }
  }
  return acc / static_cast<double>(source.size());
}

ExactW2 w2_exact(const PointCloud& source, const PointCloud& target, std::size_t max_points) {
  if (source.size() != target.size()) {
    throw InvalidArgument("w2_exact: cloud sizes differ (" + std::to_string(source.size()) +
                          " vs " + std::to_string(target.size()) + ")");
  }
  if (source.dim() != target.dim()) {
    throw InvalidArgument("w2_exact: dimensions differ (" + std::to_string(source.dim()) +
                          " vs " + std::to_string(target.dim()) + ")");
  }
  const std::size_t n = source.size();
  if (n > max_points) {
    throw InvalidArgument("w2_exact: " + std::to_string(n) + " points exceeds the cap of " +
                          std::to_string(max_points) + "; subsample the clouds first");
  }
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = source.point(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto b = target.point(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        acc += diff * diff;
      }
      cost[i * n + j] = acc;
    }
  }
  ExactW2 out;
  out.assignment = solve_assignment(cost, n);
  out.assignment.cost = matching_cost(source, target, out.assignment.matching);
  out.value = std::sqrt(out.assignment.cost);
  return out;
}

}  // namespace maxsliced
