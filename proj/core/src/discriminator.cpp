#include "maxsliced/discriminator.hpp"

#include <cmath>
#include <string>

#include "maxsliced/errors.hpp"

namespace maxsliced {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string("Discriminator: non-finite ") + what);
  }
}

}  // namespace

Discriminator::Discriminator(FeatureKind kind, std::size_t rows, std::size_t cols,
                             std::vector<double> weights, std::vector<double> offset,
                             UnitDirection omega)
    : kind_(kind),
      rows_(rows),
      cols_(cols),
      weights_(std::move(weights)),
      offset_(std::move(offset)),
      omega_(std::move(omega)) {
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("Discriminator: empty feature map");
  if (kind_ != FeatureKind::kIdentity && weights_.size() != rows_ * cols_) {
    throw InvalidArgument("Discriminator: matrix must hold " + std::to_string(rows_ * cols_) +
                          " entries, got " + std::to_string(weights_.size()));
  }
  if (kind_ == FeatureKind::kTrainableAffine && offset_.size() != rows_) {
    throw InvalidArgument("Discriminator: offset must have " + std::to_string(rows_) + " entries");
  }
  if (omega_.dim() != rows_) {
    throw InvalidArgument("Discriminator: direction has dimension " +
                          std::to_string(omega_.dim()) + " but features have dimension " +
                          std::to_string(rows_));
  }
  require_finite(weights_, "weights");
  require_finite(offset_, "offset");
}

Discriminator Discriminator::identity(UnitDirection omega) {
  const std::size_t d = omega.dim();
  return Discriminator(FeatureKind::kIdentity, d, d, {}, {}, std::move(omega));
}

Discriminator Discriminator::fixed_linear(std::size_t rows, std::size_t cols,
                                          std::vector<double> matrix, UnitDirection omega) {
  return Discriminator(FeatureKind::kFixedLinear, rows, cols, std::move(matrix), {},
                       std::move(omega));
}

Discriminator Discriminator::trainable_affine(std::size_t rows, std::size_t cols,
                                              std::vector<double> weights,
                                              std::vector<double> offset, UnitDirection omega) {
  return Discriminator(FeatureKind::kTrainableAffine, rows, cols, std::move(weights),
                       std::move(offset), std::move(omega));
}

std::vector<double> Discriminator::features(std::span<const double> x) const {
  if (x.size() != cols_) {
    throw InvalidArgument("Discriminator: input has dimension " + std::to_string(x.size()) +
                          ", expected " + std::to_string(cols_));
  }
  if (kind_ == FeatureKind::kIdentity) return {x.begin(), x.end()};
  std::vector<double> h(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = kind_ == FeatureKind::kTrainableAffine ? offset_[r] : 0.0;
    const double* row = weights_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * x[c];
    h[r] = acc;
  }
  return h;
}

PointCloud Discriminator::features(const PointCloud& cloud) const {
  if (kind_ == FeatureKind::kIdentity) {
    if (cloud.dim() != cols_) {
      throw InvalidArgument("Discriminator: input has dimension " + std::to_string(cloud.dim()) +
                            ", expected " + std::to_string(cols_));
    }
    return cloud;
  }
  std::vector<double> out;
  out.reserve(cloud.size() * rows_);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto h = features(cloud.point(i));
    out.insert(out.end(), h.begin(), h.end());
  }
  return PointCloud(cloud.size(), rows_, std::move(out));
}

std::vector<double> Discriminator::project(const PointCloud& cloud) const {
  if (cloud.dim() != cols_) {
    throw InvalidArgument("Discriminator: input has dimension " + std::to_string(cloud.dim()) +
                          ", expected " + std::to_string(cols_));
  }
  // w . (Ax + b) = (A^T w) . x + w . b
  const auto direction = input_direction();
  double shift = 0.0;
  if (kind_ == FeatureKind::kTrainableAffine) shift = omega_.dot(offset_);
  std::vector<double> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    double acc = shift;
    for (std::size_t c = 0; c < cols_; ++c) acc += direction[c] * p[c];
    out[i] = acc;
  }
  return out;
}

std::vector<double> Discriminator::input_direction() const {
  const auto w = omega_.components();
  if (kind_ == FeatureKind::kIdentity) return {w.begin(), w.end()};
  std::vector<double> g(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = weights_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) g[c] += row[c] * w[r];
  }
  return g;
}

void Discriminator::set_omega(UnitDirection omega) {
  if (omega.dim() != rows_) throw InvalidArgument("Discriminator: direction dimension mismatch");
  omega_ = std::move(omega);
}

void Discriminator::set_bias(double bias) {
  if (!std::isfinite(bias)) throw InvalidArgument("Discriminator: non-finite bias");
  bias_ = bias;
}

void Discriminator::set_affine(std::vector<double> weights, std::vector<double> offset) {
  if (kind_ != FeatureKind::kTrainableAffine) {
    throw InvalidArgument("Discriminator: feature map is not trainable");
  }
  if (weights.size() != rows_ * cols_ || offset.size() != rows_) {
    throw InvalidArgument("Discriminator: affine parameter shape mismatch");
  }
  require_finite(weights, "weights");
  require_finite(offset, "offset");
  weights_ = std::move(weights);
  offset_ = std::move(offset);
}

}  // namespace maxsliced
