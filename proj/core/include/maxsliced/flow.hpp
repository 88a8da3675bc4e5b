#pragma once

// Adversarial particle flow: the generator's parameters are the generated
// points themselves. Each outer step trains the discriminator direction for k
// steps on a surrogate loss, then moves the particles down the gradient of the
// sorted 1-D W2^2 along that direction.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "maxsliced/discriminator.hpp"
#include "maxsliced/random.hpp"
#include "maxsliced/types.hpp"

namespace maxsliced {

enum class Surrogate { kLogistic, kMomentSeparator };

struct FlowConfig {
  std::size_t n = 512;  ///< particles
  std::size_t k = 5;    ///< surrogate steps per outer step
  double generator_rate = 8.0;
  double discriminator_rate = 0.5;
  Surrogate surrogate = Surrogate::kLogistic;
  std::size_t outer_steps = 2000;
  /// Batch size per side; 0 uses min(n, |target|).
  std::size_t minibatch = 0;
  bool with_replacement = false;
  /// Reuse the last surrogate minibatch for the generator step instead of
  /// drawing a fresh one.
  bool share_minibatch = false;
  /// Evaluate the max-sliced distance every this many steps (0: first and
  /// last only). Requires d = 2 and |target| = n.
  std::size_t eval_interval = 0;
  double grad_clip = 10.0;
  /// Standard deviation of the default N(0, s^2 I) particle initialization.
  double init_scale = 1.0;
  Seed seed{};

  std::size_t batch_size(std::size_t target_size) const;

  void validate(std::size_t target_size) const;
};

struct FlowInit {
  std::optional<PointCloud> particles;
  std::optional<Discriminator> discriminator;
};

struct TrainingReport {
  std::vector<std::pair<std::size_t, double>> loss_history;
  PointCloud final_particles;
  std::vector<std::pair<std::size_t, double>> eval_history;
  Discriminator final_discriminator;
  std::size_t fallback_steps = 0;  ///< steps whose separator direction was degenerate
};

/// Row-major n x d gradient, one row per particle.
struct ParticleGradient {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }
};

/// (1/n) sum_i (w.h(particle_(i)) - w.h(target_(i)))^2 with ranks taken along
/// w.h.
double sorted_projected_loss(const PointCloud& particles, const PointCloud& target,
                             const Discriminator& disc);

/// Exact gradient of sorted_projected_loss with respect to each particle:
/// (2/n)(s_j - t_j) * grad_x(w.h), where t_j is the target value matched to
/// particle j by rank.
ParticleGradient generator_gradient(const PointCloud& particles, const PointCloud& target,
                                    const Discriminator& disc);

TrainingReport train(const PointCloud& target, const FlowConfig& config, FlowInit init = {});

/// n points split evenly over 8 isotropic Gaussians centered on a circle.
PointCloud make_ring_mixture(std::size_t n, Seed seed, double radius = 2.0,
                             double stddev = 0.1, std::size_t components = 8);

}  // namespace maxsliced
