#include "maxsliced/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "maxsliced/errors.hpp"

namespace maxsliced {

Order::Order(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidArgument("transport order must be a finite p >= 1, got " + std::to_string(p));
  }
}

namespace {

void check_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("1-D transport: empty sample");
  if (a.size() != b.size()) {
    throw InvalidArgument("1-D transport: sample sizes differ (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  for (std::span<const double> s : {a, b}) {
    for (double v : s) {
      if (!std::isfinite(v)) throw InvalidArgument("1-D transport: non-finite sample value");
    }
  }
}

std::vector<double> sorted_copy(std::span<const double> s) {
  std::vector<double> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double sorted_w2_squared(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double diff = sa[i] - sb[i];
    acc += diff * diff;
  }
  return acc / static_cast<double>(sa.size());
}

double sorted_wp(std::span<const double> a, std::span<const double> b, Order order) {
  const double p = order.value();
  if (p == 2.0) return std::sqrt(sorted_w2_squared(a, b));
  check_samples(a, b);
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double diff = std::abs(sa[i] - sb[i]);
    acc += p == 1.0 ? diff : std::pow(diff, p);
  }
  acc /= static_cast<double>(sa.size());
  return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

}  // namespace maxsliced
