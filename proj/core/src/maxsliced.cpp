#include "maxsliced/maxsliced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "maxsliced/errors.hpp"
#include "maxsliced/ot1d.hpp"
#include "maxsliced/projection.hpp"

namespace maxsliced {
namespace {

void check_pair(const PointCloud& source, const PointCloud& target, const char* who) {
  if (source.dim() != target.dim()) {
    throw InvalidArgument(std::string(who) + ": cloud dimensions differ (" +
                          std::to_string(source.dim()) + " vs " +
                          std::to_string(target.dim()) + ")");
  }
  if (source.size() != target.size()) {
    throw InvalidArgument(std::string(who) + ": cloud sizes differ (" +
                          std::to_string(source.size()) + " vs " +
                          std::to_string(target.size()) + ")");
  }
}

double projected_w2_squared(const PointCloud& source, const PointCloud& target,
                            const UnitDirection& w) {
  return sorted_w2_squared(project(source, w), project(target, w));
}

std::vector<std::size_t> rank_order(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return idx;
}

// Second moments (a, b, c) of v_i = source_(i) - target_(i) under the sorted
// matching at angle theta:  W2^2(t) = a cos^2 t + 2b cos t sin t + c sin^2 t
// for every t whose sort orders agree with theta's.
struct QuadraticForm {
  double a = 0.0, b = 0.0, c = 0.0;

  [[nodiscard]] double at(double t) const {
    const double ct = std::cos(t), st = std::sin(t);
    return a * ct * ct + 2.0 * b * ct * st + c * st * st;
  }
};

QuadraticForm matching_form(const PointCloud& source, const PointCloud& target, double theta) {
  const auto w = UnitDirection::from_angle(theta);
  const auto ps = project(source, w);
  const auto pt = project(target, w);
  const auto rs = rank_order(ps);
  const auto rt = rank_order(pt);
  QuadraticForm q;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto x = source.point(rs[i]);
    const auto y = target.point(rt[i]);
    const double vx = x[0] - y[0], vy = x[1] - y[1];
    q.a += vx * vx;
    q.b += vx * vy;
    q.c += vy * vy;
  }
  const double n = static_cast<double>(rs.size());
  q.a /= n;
  q.b /= n;
  q.c /= n;
  return q;
}

// Angles in [0, pi) at which two points of `cloud` project equally.
void append_swap_angles(const PointCloud& cloud, std::vector<double>& out) {
  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      const auto q = cloud.point(j);
      const double dx = p[0] - q[0], dy = p[1] - q[1];
      if (dx == 0.0 && dy == 0.0) continue;
      double t = std::fmod(std::atan2(dy, dx) + 0.5 * pi, pi);
      if (t < 0.0) t += pi;
      out.push_back(t);
    }
  }
}

}  // namespace

double projected_w2(const PointCloud& source, const PointCloud& target, const UnitDirection& w) {
  return std::sqrt(projected_w2_squared(source, target, w));
}

MaxSlicedResult grid_oracle_2d(const PointCloud& source, const PointCloud& target,
                               GridOracleOptions options) {
  check_pair(source, target, "grid_oracle_2d");
  if (source.dim() != 2) {
    throw InvalidArgument("grid_oracle_2d: requires 2-D clouds, got dimension " +
                          std::to_string(source.dim()));
  }
  if (options.n_angles < 2) throw InvalidArgument("grid_oracle_2d: n_angles must be at least 2");

  constexpr double pi = std::numbers::pi;
  const std::size_t n_angles = options.n_angles;
  const double step = pi / static_cast<double>(n_angles);

  std::vector<double> grid(n_angles + 1);
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < n_angles; ++i) {
    grid[i] = projected_w2(source, target, UnitDirection::from_angle(step * static_cast<double>(i)));
    if (grid[i] > grid[best_index]) best_index = i;
  }
  grid[n_angles] = grid[0];  // w and -w give the same distance

  double best_value = grid[best_index];
  double best_theta = step * static_cast<double>(best_index);
  std::size_t iterations = n_angles;

  // A cloud of n points is determined by its projections onto n + 1 distinct
  // directions, so an all-zero grid then certifies identical clouds.
  const bool certified_zero = best_value == 0.0 && source.size() < n_angles;

  if (options.refine && !certified_zero) {
    std::vector<double> center = source.mean();
    const auto tm = target.mean();
    for (std::size_t k = 0; k < 2; ++k) center[k] = 0.5 * (center[k] + tm[k]);
    const double lipschitz = source.rms_radius(center) + target.rms_radius(center);

    std::vector<double> swaps;
    append_swap_angles(source, swaps);
    append_swap_angles(target, swaps);
    std::sort(swaps.begin(), swaps.end());

    std::vector<std::size_t> brackets(n_angles);
    std::iota(brackets.begin(), brackets.end(), std::size_t{0});
    auto bound = [&](std::size_t j) {
      return 0.5 * (grid[j] + grid[j + 1] + lipschitz * step);
    };
    std::stable_sort(brackets.begin(), brackets.end(),
                     [&](std::size_t x, std::size_t y) { return bound(x) > bound(y); });

    std::vector<double> cuts;
    for (std::size_t j : brackets) {
      if (bound(j) <= best_value) break;
      const double lo = step * static_cast<double>(j);
      const double hi = j + 1 == n_angles ? pi : step * static_cast<double>(j + 1);
      cuts.assign(1, lo);
      for (auto it = std::upper_bound(swaps.begin(), swaps.end(), lo);
           it != swaps.end() && *it < hi; ++it) {
        cuts.push_back(*it);
      }
      cuts.push_back(hi);
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s], b = cuts[s + 1];
        if (!(b > a)) continue;
        ++iterations;
        const QuadraticForm q = matching_form(source, target, 0.5 * (a + b));
        // a cos^2 + 2b cs + c sin^2 = (a+c)/2 + (a-c)/2 cos 2t + b sin 2t
        const double phase = 0.5 * std::atan2(2.0 * q.b, q.a - q.c);
        double candidates[6] = {a, b, phase - pi, phase, phase + pi, phase + 2.0 * pi};
        for (double t : candidates) {
          if (t < a || t > b) continue;
          const double f = q.at(t);
          if (f > 0.0 && std::sqrt(f) > best_value) {
            best_value = std::sqrt(f);
            best_theta = t;
          }
        }
      }
    }
  }

  MaxSlicedResult out{UnitDirection::from_angle(best_theta), 0.0,
                      SearchStrategy::kGridOracle2d, iterations, 0};
  out.value = projected_w2(source, target, out.direction);
  return out;
}

std::vector<double> projected_w2_squared_gradient(const PointCloud& source,
                                                  const PointCloud& target,
                                                  const UnitDirection& w) {
  check_pair(source, target, "projected_w2_squared_gradient");
  if (w.dim() != source.dim()) throw InvalidArgument("projected gradient: direction dimension mismatch");
  const auto ps = project(source, w);
  const auto pt = project(target, w);
  const auto rs = SortPermutation::of(ps);
  const auto rt = SortPermutation::of(pt);
  const std::size_t d = source.dim();
  std::vector<double> g(d, 0.0);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double gap = ps[rs[i]] - pt[rt[i]];
    const auto x = source.point(rs[i]);
    const auto y = target.point(rt[i]);
    for (std::size_t k = 0; k < d; ++k) g[k] += gap * (x[k] - y[k]);
  }
  const double scale = 2.0 / static_cast<double>(rs.size());
  for (double& v : g) v *= scale;
  return g;
}

MaxSlicedResult sphere_ascent(const PointCloud& source, const PointCloud& target,
                              const UnitDirection& init, std::size_t steps, double rate,
                              Seed reinit_seed) {
  check_pair(source, target, "sphere_ascent");
  if (init.dim() != source.dim()) {
    throw InvalidArgument("sphere_ascent: initial direction has dimension " +
                          std::to_string(init.dim()) + ", clouds have dimension " +
                          std::to_string(source.dim()));
  }
  if (steps == 0) throw InvalidArgument("sphere_ascent: steps must be positive");
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("sphere_ascent: rate must be positive");
  }
  const std::size_t d = source.dim();

  UnitDirection current = init;
  double value = projected_w2_squared(source, target, current);
  MaxSlicedResult best{current, value, SearchStrategy::kSphereAscent, 0, 0};
  double step_rate = rate;
  std::vector<double> tangent(d);
  bool need_gradient = true;
  std::vector<double> candidate(d);

  for (std::size_t it = 0; it < steps; ++it) {
    best.iterations = it + 1;
    if (need_gradient) {
      const auto g = projected_w2_squared_gradient(source, target, current);
      const double radial = current.dot(g);
      const auto w = current.components();
      double tnorm = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        tangent[k] = g[k] - radial * w[k];
        tnorm += tangent[k] * tangent[k];
      }
      if (!(std::sqrt(tnorm) > 1e-15 * (1.0 + value))) {
        if (value > 0.0) break;  // stationary
        // The projections coincide along w: restart from a fresh direction.
        current = random_direction(d, {reinit_seed, best.reinitializations++});
        value = projected_w2_squared(source, target, current);
        step_rate = rate;
        if (value > best.value) {
          best.value = value;
          best.direction = current;
        }
        continue;
      }
      need_gradient = false;
    }
    const auto w = current.components();
    for (std::size_t k = 0; k < d; ++k) candidate[k] = w[k] + step_rate * tangent[k];
    UnitDirection next = current;
    try {
      next = UnitDirection::normalized(candidate, 1e-12);
    } catch (const Error&) {
      current = random_direction(d, {reinit_seed, best.reinitializations++});
      value = projected_w2_squared(source, target, current);
      step_rate = rate;
      need_gradient = true;
      continue;
    }
    const double next_value = projected_w2_squared(source, target, next);
    if (next_value > value) {
      current = std::move(next);
      value = next_value;
      step_rate *= 1.5;
      need_gradient = true;
      if (value > best.value) {
        best.value = value;
        best.direction = current;
      }
    } else {
      step_rate *= 0.5;
      if (step_rate < 1e-14 * rate) break;
    }
  }
  best.value = projected_w2(source, target, best.direction);
  return best;
}

MaxSlicedResult sphere_ascent_restarts(const PointCloud& source, const PointCloud& target,
                                       std::size_t restarts, std::size_t steps, double rate,
                                       Seed seed, std::span<const UnitDirection> inits) {
  if (restarts == 0 && inits.empty()) {
    throw InvalidArgument("sphere_ascent_restarts: no starting directions");
  }
  std::optional<MaxSlicedResult> best;
  std::size_t total_iterations = 0;
  std::size_t total_reinit = 0;
  auto consider = [&](const UnitDirection& init, std::uint64_t tag) {
    auto r = sphere_ascent(source, target, init, steps, rate, seed.derive(tag));
    total_iterations += r.iterations;
    total_reinit += r.reinitializations;
    if (!best || r.value > best->value) best = std::move(r);
  };
  for (std::size_t i = 0; i < inits.size(); ++i) consider(inits[i], 1000000 + i);
  for (std::size_t i = 0; i < restarts; ++i) {
    consider(random_direction(source.dim(), {seed, i}), i);
  }
  best->iterations = total_iterations;
  best->reinitializations = total_reinit;
  return *best;
}

UnitDirection moment_separator_direction(const PointCloud& source, const PointCloud& target) {
  if (source.dim() != target.dim()) {
    throw InvalidArgument("moment_separator_direction: cloud dimensions differ (" +
                          std::to_string(source.dim()) + " vs " +
                          std::to_string(target.dim()) + ")");
  }
  auto m = source.mean();
  const auto mt = target.mean();
  for (std::size_t k = 0; k < m.size(); ++k) m[k] -= mt[k];
  if (norm(m) <= 1e-12) {
    throw DegenerateDirection("moment separator: the two clouds have the same mean");
  }
  return UnitDirection::normalized(m);
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

double logistic_objective(const PointCloud& real, const PointCloud& fake,
                          const Discriminator& disc) {
  if (real.dim() != fake.dim()) throw InvalidArgument("logistic_objective: dimension mismatch");
  const auto zr = disc.project(real);
  const auto zf = disc.project(fake);
  double acc_r = 0.0, acc_f = 0.0;
  for (double z : zr) acc_r -= softplus(-(z + disc.bias()));
  for (double z : zf) acc_f -= softplus(z + disc.bias());
  return acc_r / static_cast<double>(zr.size()) + acc_f / static_cast<double>(zf.size());
}

void logistic_step(const PointCloud& real, const PointCloud& fake, Discriminator& disc,
                   double rate, double grad_clip) {
  if (real.dim() != fake.dim() || real.dim() != disc.input_dim()) {
    throw InvalidArgument("logistic_step: dimension mismatch between clouds and discriminator");
  }
  const std::size_t r = disc.feature_dim();
  const std::size_t d = disc.input_dim();
  const bool affine = disc.kind() == FeatureKind::kTrainableAffine;
  const auto w = disc.omega().components();

  std::vector<double> g_omega(r, 0.0);
  std::vector<double> g_weights(affine ? r * d : 0, 0.0);
  std::vector<double> g_offset(affine ? r : 0, 0.0);
  double g_bias = 0.0;

  auto accumulate = [&](const PointCloud& cloud, bool is_real) {
    const double inv_n = 1.0 / static_cast<double>(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const auto x = cloud.point(i);
      const auto h = disc.features(x);
      double z = disc.bias();
      for (std::size_t k = 0; k < r; ++k) z += w[k] * h[k];
      // d/dz ln s(z) = 1 - s(z);  d/dz ln(1 - s(z)) = -s(z)
      const double gz = (is_real ? 1.0 - sigmoid(z) : -sigmoid(z)) * inv_n;
      g_bias += gz;
      for (std::size_t k = 0; k < r; ++k) g_omega[k] += gz * h[k];
      if (affine) {
        for (std::size_t k = 0; k < r; ++k) {
          const double gk = gz * w[k];
          g_offset[k] += gk;
          double* row = g_weights.data() + k * d;
          for (std::size_t c = 0; c < d; ++c) row[c] += gk * x[c];
        }
      }
    }
  };
  accumulate(real, true);
  accumulate(fake, false);

  double sq = g_bias * g_bias;
  for (double v : g_omega) sq += v * v;
  for (double v : g_weights) sq += v * v;
  for (double v : g_offset) sq += v * v;
  const double gnorm = std::sqrt(sq);
  double scale = rate;
  if (std::isfinite(gnorm) && gnorm > grad_clip) scale *= grad_clip / gnorm;
  if (!std::isfinite(gnorm)) return;

  std::vector<double> next_omega(r);
  for (std::size_t k = 0; k < r; ++k) next_omega[k] = w[k] + scale * g_omega[k];
  try {
    disc.set_omega(UnitDirection::normalized(next_omega, 1e-12));
  } catch (const DegenerateDirection&) {
    // keep the previous direction
  }
  disc.set_bias(disc.bias() + scale * g_bias);
  if (affine) {
    std::vector<double> weights(disc.weights().begin(), disc.weights().end());
    std::vector<double> offset(disc.offset().begin(), disc.offset().end());
    for (std::size_t k = 0; k < weights.size(); ++k) weights[k] += scale * g_weights[k];
    for (std::size_t k = 0; k < offset.size(); ++k) offset[k] += scale * g_offset[k];
    disc.set_affine(std::move(weights), std::move(offset));
  }
}

SurrogateResult logistic_surrogate_direction(const PointCloud& real, const PointCloud& fake,
                                             Discriminator init, LogisticOptions options) {
  if (real.dim() != fake.dim()) {
    throw InvalidArgument("logistic_surrogate_direction: cloud dimensions differ (" +
                          std::to_string(real.dim()) + " vs " + std::to_string(fake.dim()) +
                          ")");
  }
  if (options.steps == 0) throw InvalidArgument("logistic_surrogate_direction: k must be at least 1");
  if (!(options.rate > 0.0)) throw InvalidArgument("logistic_surrogate_direction: rate must be positive");
  for (std::size_t s = 0; s < options.steps; ++s) {
    logistic_step(real, fake, init, options.rate, options.grad_clip);
  }
  UnitDirection direction = init.omega();
  return SurrogateResult{std::move(direction), std::move(init)};
}

BoundsReport check_bounds(const PointCloud& source, const PointCloud& target,
                          BoundsOptions options) {
  check_pair(source, target, "check_bounds");
  if (options.upper == UpperStrategy::kGridOracle && source.dim() != 2) {
    throw InvalidArgument("check_bounds: the grid oracle requires 2-D clouds, got dimension " +
                          std::to_string(source.dim()));
  }
  BoundsReport report{0.0, 0.0, 0.0, UnitDirection::axis(source.dim(), 0), false};
  try {
    report.direction = moment_separator_direction(source, target);
    auto m = source.mean();
    const auto mt = target.mean();
    for (std::size_t k = 0; k < m.size(); ++k) m[k] -= mt[k];
    report.lower = dot(m, m);
  } catch (const DegenerateDirection&) {
    report.direction = random_direction(source.dim(), {options.seed.derive(0xB0B0), 0});
    report.fallback = true;
    report.lower = 0.0;
  }
  report.mid = projected_w2_squared(source, target, report.direction);
  if (options.upper == UpperStrategy::kGridOracle) {
    const double v = grid_oracle_2d(source, target, options.grid).value;
    report.upper = v * v;
  } else {
    const UnitDirection inits[] = {report.direction};
    const double v = sphere_ascent_restarts(source, target, options.restarts, options.steps,
                                            options.rate, options.seed, inits)
                         .value;
    report.upper = v * v;
  }
  return report;
}

}  // namespace maxsliced
