#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxsliced/types.hpp"

namespace maxsliced {

enum class FeatureKind { kIdentity, kFixedLinear, kTrainableAffine };

/// Linear discriminator w . h(x) + c on a feature map h.
///
/// h is the identity, a fixed r x d matrix M (h(x) = Mx), or a trainable
/// affine map (h(x) = Ax + b). The direction w lives in feature space and is
/// kept on the unit sphere; c is the logistic intercept.
class Discriminator {
 public:
  static Discriminator identity(UnitDirection omega);
  static Discriminator fixed_linear(std::size_t rows, std::size_t cols, std::vector<double> matrix,
                                    UnitDirection omega);
  static Discriminator trainable_affine(std::size_t rows, std::size_t cols,
                                        std::vector<double> weights, std::vector<double> offset,
                                        UnitDirection omega);

  [[nodiscard]] FeatureKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t input_dim() const noexcept { return cols_; }
  [[nodiscard]] std::size_t feature_dim() const noexcept { return rows_; }
  [[nodiscard]] const UnitDirection& omega() const noexcept { return omega_; }
  [[nodiscard]] double bias() const noexcept { return bias_; }
  /// Row-major r x d matrix (empty for the identity map).
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  [[nodiscard]] std::span<const double> offset() const noexcept { return offset_; }

  [[nodiscard]] std::vector<double> features(std::span<const double> x) const;
  [[nodiscard]] PointCloud features(const PointCloud& cloud) const;
  /// w . h(x) for every point (intercept excluded).
  [[nodiscard]] std::vector<double> project(const PointCloud& cloud) const;
  /// Gradient of x -> w . h(x): w for the identity, M^T w or A^T w otherwise.
  [[nodiscard]] std::vector<double> input_direction() const;

  void set_omega(UnitDirection omega);
  void set_bias(double bias);
  /// Replaces A and b; only valid for kTrainableAffine.
  void set_affine(std::vector<double> weights, std::vector<double> offset);

 private:
  Discriminator(FeatureKind kind, std::size_t rows, std::size_t cols, std::vector<double> weights,
                std::vector<double> offset, UnitDirection omega);

  FeatureKind kind_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> weights_;
  std::vector<double> offset_;
  UnitDirection omega_;
  double bias_ = 0.0;
};

}  // namespace maxsliced
