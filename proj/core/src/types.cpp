#include "maxsliced/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "maxsliced/errors.hpp"

namespace maxsliced {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("dot: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

PointCloud::PointCloud(std::size_t n, std::size_t dim, std::vector<double> row_major)
    : n_(n), dim_(dim), data_(std::move(row_major)) {
  if (n_ == 0) throw InvalidArgument("PointCloud: at least one point is required");
  if (dim_ == 0) throw InvalidArgument("PointCloud: dimension must be at least 1");
  if (data_.size() != n_ * dim_) {
    throw InvalidArgument("PointCloud: expected " + std::to_string(n_ * dim_) +
                          " coordinates, got " + std::to_string(data_.size()));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw InvalidArgument("PointCloud: non-finite coordinate in point " +
                            std::to_string(k / dim_));
    }
  }
}

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidArgument("PointCloud: at least one point is required");
  const std::size_t dim = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw InvalidArgument("PointCloud: point " + std::to_string(i) + " has dimension " +
                            std::to_string(rows[i].size()) + ", expected " +
                            std::to_string(dim));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return flat;
}

}  // namespace

PointCloud::PointCloud(const std::vector<std::vector<double>>& rows)
    : PointCloud(rows.size(), rows.empty() ? 0 : rows.front().size(), flatten(rows)) {}

std::vector<double> PointCloud::mean() const {
  std::vector<double> m(dim_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto p = point(i);
    for (std::size_t k = 0; k < dim_; ++k) m[k] += p[k];
  }
  for (double& v : m) v /= static_cast<double>(n_);
  return m;
}

double PointCloud::rms_radius(std::span<const double> center) const {
  if (center.size() != dim_) throw InvalidArgument("rms_radius: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const auto p = point(i);
    for (std::size_t k = 0; k < dim_; ++k) {
      const double diff = p[k] - center[k];
      acc += diff * diff;
    }
  }
  return std::sqrt(acc / static_cast<double>(n_));
}

PointCloud PointCloud::translated(std::span<const double> offset) const {
  if (offset.size() != dim_) throw InvalidArgument("translated: dimension mismatch");
  std::vector<double> out = data_;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += offset[k % dim_];
  return PointCloud(n_, dim_, std::move(out));
}

PointCloud PointCloud::scaled(double factor) const {
  std::vector<double> out = data_;
  for (double& v : out) v *= factor;
  return PointCloud(n_, dim_, std::move(out));
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * dim_);
  for (std::size_t idx : indices) {
    if (idx >= n_) throw InvalidArgument("subset: index out of range");
    const auto p = point(idx);
    out.insert(out.end(), p.begin(), p.end());
  }
  return PointCloud(indices.size(), dim_, std::move(out));
}

UnitDirection::UnitDirection(std::vector<double> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("UnitDirection: dimension must be at least 1");
  for (double c : components_) {
    if (!std::isfinite(c)) throw InvalidArgument("UnitDirection: non-finite component");
  }
  const double n = norm(components_);
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw InvalidArgument("UnitDirection: norm " + std::to_string(n) + " is not 1");
  }
}

UnitDirection UnitDirection::normalized(std::span<const double> v, double min_norm) {
  if (v.empty()) throw InvalidArgument("UnitDirection: dimension must be at least 1");
  const double n = norm(v);
  if (!std::isfinite(n)) throw InvalidArgument("UnitDirection: non-finite vector");
  if (n <= min_norm || n == 0.0) {
    throw DegenerateDirection("cannot normalize a vector of norm " + std::to_string(n));
  }
  std::vector<double> out(v.begin(), v.end());
  for (double& c : out) c /= n;
  return UnitDirection(std::move(out), Unchecked{});
}

UnitDirection UnitDirection::axis(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw InvalidArgument("UnitDirection::axis: axis out of range");
  std::vector<double> out(dim, 0.0);
  out[axis] = 1.0;
  return UnitDirection(std::move(out), Unchecked{});
}

UnitDirection UnitDirection::from_angle(double theta) {
  return UnitDirection({std::cos(theta), std::sin(theta)}, Unchecked{});
}

double UnitDirection::dot(std::span<const double> v) const {
  return maxsliced::dot(components_, v);
}

UnitDirection UnitDirection::negated() const {
  std::vector<double> out = components_;
  for (double& c : out) c = -c;
  return UnitDirection(std::move(out), Unchecked{});
}

DirectionSet::DirectionSet(std::vector<UnitDirection> directions, Seed seed,
                           DirectionGeneration generation)
    : directions_(std::move(directions)), seed_(seed), generation_(generation) {
  if (directions_.empty()) throw InvalidArgument("DirectionSet: at least one direction required");
  const std::size_t d = directions_.front().dim();
  for (const auto& w : directions_) {
    if (w.dim() != d) throw InvalidArgument("DirectionSet: directions of mixed dimension");
  }
}

DirectionSet DirectionSet::explicit_set(std::vector<UnitDirection> directions) {
  return DirectionSet(std::move(directions), Seed{0}, DirectionGeneration::kExplicit);
}

DirectionSet DirectionSet::angular_grid(std::size_t n_angles) {
  if (n_angles == 0) throw InvalidArgument("angular_grid: n_angles must be positive");
  std::vector<UnitDirection> dirs;
  dirs.reserve(n_angles);
  for (std::size_t i = 0; i < n_angles; ++i) {
    dirs.push_back(UnitDirection::from_angle(std::numbers::pi * static_cast<double>(i) /
                                             static_cast<double>(n_angles)));
  }
  return DirectionSet(std::move(dirs), Seed{0}, DirectionGeneration::kAngularGrid);
}

SortPermutation SortPermutation::of(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return SortPermutation(std::move(idx));
}

std::vector<double> SortPermutation::apply(std::span<const double> values) const {
  if (values.size() != indices_.size()) throw InvalidArgument("SortPermutation: size mismatch");
  std::vector<double> out(values.size());
  for (std::size_t r = 0; r < indices_.size(); ++r) out[r] = values[indices_[r]];
  return out;
}

bool SortPermutation::sorts(std::span<const double> values) const {
  if (values.size() != indices_.size()) return false;
  std::vector<char> seen(indices_.size(), 0);
  for (std::size_t idx : indices_) {
    if (idx >= indices_.size() || seen[idx]) return false;
    seen[idx] = 1;
  }
  for (std::size_t r = 1; r < indices_.size(); ++r) {
    if (values[indices_[r]] < values[indices_[r - 1]]) return false;
  }
  return true;
}

}  // namespace maxsliced
