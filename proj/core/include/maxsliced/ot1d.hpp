#pragma once

#include <span>

namespace maxsliced {

/// Transport order p >= 1.
class Order {
 public:
  explicit Order(double p);
  [[nodiscard]] double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Mean squared difference of the sorted samples: the exact squared W2
/// between two equal-size empirical distributions on the line.
double sorted_w2_squared(std::span<const double> a, std::span<const double> b);

/// [(1/n) sum_i |a_(i) - b_(i)|^p]^(1/p) over sorted samples.
double sorted_wp(std::span<const double> a, std::span<const double> b, Order order);

}  // namespace maxsliced
