#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxsliced/random.hpp"

namespace maxsliced {

/// Equal-weight empirical distribution: n points in R^d, stored row-major.
///
/// Construction validates that n >= 1, d >= 1, every row has dimension d, and
/// every coordinate is finite. A PointCloud is immutable afterwards.
class PointCloud {
 public:
  PointCloud(std::size_t n, std::size_t dim, std::vector<double> row_major);
  explicit PointCloud(const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

  [[nodiscard]] std::vector<double> mean() const;
  /// Root-mean-square distance of the points to `center`.
  [[nodiscard]] double rms_radius(std::span<const double> center) const;

  [[nodiscard]] PointCloud translated(std::span<const double> offset) const;
  [[nodiscard]] PointCloud scaled(double factor) const;
  /// Rows selected by `indices`, in that order (repeats allowed).
  [[nodiscard]] PointCloud subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t n_;
  std::size_t dim_;
  std::vector<double> data_;
};

/// A vector on the unit sphere, ||w||_2 within 1e-9 of one.
class UnitDirection {
 public:
  static constexpr double kNormTolerance = 1e-9;

  /// Wraps components that are already unit length; throws otherwise.
  explicit UnitDirection(std::vector<double> components);

  /// Normalizes `v`. Throws DegenerateDirection when ||v|| <= min_norm.
  static UnitDirection normalized(std::span<const double> v, double min_norm = 0.0);
  /// Standard basis vector e_axis in R^dim.
  static UnitDirection axis(std::size_t dim, std::size_t axis);
  /// (cos theta, sin theta).
  static UnitDirection from_angle(double theta);

  [[nodiscard]] std::size_t dim() const noexcept { return components_.size(); }
  [[nodiscard]] std::span<const double> components() const noexcept { return components_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return components_[i]; }
  [[nodiscard]] double dot(std::span<const double> v) const;
  [[nodiscard]] UnitDirection negated() const;

  friend bool operator==(const UnitDirection&, const UnitDirection&) = default;

 private:
  struct Unchecked {};
  UnitDirection(std::vector<double> components, Unchecked) noexcept
      : components_(std::move(components)) {}

  std::vector<double> components_;
};

enum class DirectionGeneration { kGaussianNormalized, kAngularGrid, kExplicit };

/// Ordered set of projection directions on a common sphere.
class DirectionSet {
 public:
  DirectionSet(std::vector<UnitDirection> directions, Seed seed,
               DirectionGeneration generation);

  /// Wraps a hand-picked list (seed 0, generation kExplicit).
  static DirectionSet explicit_set(std::vector<UnitDirection> directions);
  /// n_angles directions (cos t, sin t), t = i*pi/n_angles.
  static DirectionSet angular_grid(std::size_t n_angles);

  [[nodiscard]] std::size_t size() const noexcept { return directions_.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return directions_.front().dim(); }
  [[nodiscard]] const UnitDirection& operator[](std::size_t i) const noexcept {
    return directions_[i];
  }
  [[nodiscard]] const std::vector<UnitDirection>& directions() const noexcept {
    return directions_;
  }
  [[nodiscard]] Seed seed() const noexcept { return seed_; }
  [[nodiscard]] DirectionGeneration generation() const noexcept { return generation_; }

  [[nodiscard]] auto begin() const noexcept { return directions_.begin(); }
  [[nodiscard]] auto end() const noexcept { return directions_.end(); }

 private:
  std::vector<UnitDirection> directions_;
  Seed seed_;
  DirectionGeneration generation_;
};

/// A permutation that sorts a scalar sequence (stable; ties by index).
class SortPermutation {
 public:
  /// Computes the stable sorting permutation of `values`.
  static SortPermutation of(std::span<const double> values);

  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] std::size_t operator[](std::size_t rank) const noexcept {
    return indices_[rank];
  }
  [[nodiscard]] const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  /// values permuted into sorted order.
  [[nodiscard]] std::vector<double> apply(std::span<const double> values) const;
  /// True when the indices are a bijection and `values` comes out non-decreasing.
  [[nodiscard]] bool sorts(std::span<const double> values) const;

 private:
  explicit SortPermutation(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}
  std::vector<std::size_t> indices_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

}  // namespace maxsliced
