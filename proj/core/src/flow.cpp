#include "maxsliced/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "maxsliced/errors.hpp"
#include "maxsliced/maxsliced.hpp"
#include "maxsliced/ot1d.hpp"
#include "maxsliced/projection.hpp"

namespace maxsliced {

void FlowConfig::validate(std::size_t target_size) const {
  if (n == 0) throw InvalidArgument("flow: n must be at least 1");
  if (target_size == 0) throw InvalidArgument("flow: empty target");
  if (!with_replacement && (minibatch > n || minibatch > target_size)) {
    throw InvalidArgument("flow: minibatch " + std::to_string(minibatch) +
                          " exceeds the particle or target count without replacement");
  }
  if (!(generator_rate > 0.0) || !(discriminator_rate > 0.0)) {
    throw InvalidArgument("flow: learning rates must be positive");
  }
  if (outer_steps == 0) throw InvalidArgument("flow: outer_steps must be at least 1");
  if (!(grad_clip > 0.0)) throw InvalidArgument("flow: grad_clip must be positive");
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw InvalidArgument("flow: init_scale must be nonnegative");
  }
}

std::size_t FlowConfig::batch_size(std::size_t target_size) const {
  return minibatch != 0 ? minibatch : std::min(n, target_size);
}

namespace {

struct Ranked {
  std::vector<double> particle_values;
  std::vector<double> matched_target;  // target value matched to each particle
};

Ranked match_by_rank(const PointCloud& particles, const PointCloud& target,
                     const Discriminator& disc) {
  if (particles.size() != target.size()) {
    throw InvalidArgument("flow: particle and target batches differ in size (" +
                          std::to_string(particles.size()) + " vs " +
                          std::to_string(target.size()) + ")");
  }
  if (particles.dim() != target.dim()) {
    throw InvalidArgument("flow: particle and target dimensions differ (" +
                          std::to_string(particles.dim()) + " vs " +
                          std::to_string(target.dim()) + ")");
  }
  Ranked out{disc.project(particles), {}};
  const auto t = disc.project(target);
  const auto ps = SortPermutation::of(out.particle_values);
  const auto ts = SortPermutation::of(t);
  out.matched_target.resize(t.size());
  for (std::size_t r = 0; r < t.size(); ++r) out.matched_target[ps[r]] = t[ts[r]];
  return out;
}

std::vector<std::size_t> draw_batch(Philox& rng, std::size_t population, std::size_t m,
                                    bool with_replacement) {
  std::vector<std::size_t> out(m);
  if (with_replacement) {
    for (auto& v : out) v = rng.below(population);
    return out;
  }
  // Partial Fisher-Yates.
  std::vector<std::size_t> pool(population);
  for (std::size_t i = 0; i < population; ++i) pool[i] = i;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.below(population - i);
    std::swap(pool[i], pool[j]);
    out[i] = pool[i];
  }
  return out;
}

PointCloud gather(std::span<const double> flat, std::size_t dim,
                  std::span<const std::size_t> indices) {
  std::vector<double> out;
  out.reserve(indices.size() * dim);
  for (std::size_t idx : indices) {
    out.insert(out.end(), flat.begin() + idx * dim, flat.begin() + (idx + 1) * dim);
  }
  return PointCloud(indices.size(), dim, std::move(out));
}

}  // namespace

double sorted_projected_loss(const PointCloud& particles, const PointCloud& target,
                             const Discriminator& disc) {
  if (particles.dim() != target.dim()) {
    throw InvalidArgument("flow: particle and target dimensions differ");
  }
  return sorted_w2_squared(disc.project(particles), disc.project(target));
}

ParticleGradient generator_gradient(const PointCloud& particles, const PointCloud& target,
                                    const Discriminator& disc) {
  const Ranked ranked = match_by_rank(particles, target, disc);
  const auto direction = disc.input_direction();
  const std::size_t n = particles.size();
  const std::size_t d = particles.dim();
  ParticleGradient g{n, d, std::vector<double>(n * d)};
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double residual = scale * (ranked.particle_values[j] - ranked.matched_target[j]);
    for (std::size_t k = 0; k < d; ++k) g.data[j * d + k] = residual * direction[k];
  }
  return g;
}

TrainingReport train(const PointCloud& target, const FlowConfig& config, FlowInit init) {
  config.validate(target.size());
  const std::size_t n = config.n;
  const std::size_t d = target.dim();
  const std::size_t m = config.batch_size(target.size());

  std::vector<double> particles;
  if (init.particles) {
    if (init.particles->size() != n || init.particles->dim() != d) {
      throw InvalidArgument("flow: initial particles must be " + std::to_string(n) + " x " +
                            std::to_string(d));
    }
    const auto data = init.particles->data();
    particles.assign(data.begin(), data.end());
  } else {
    Philox rng({config.seed.derive(1), 0});
    particles.resize(n * d);
    for (double& v : particles) v = config.init_scale * rng.normal();
  }

  Discriminator disc = init.discriminator
                           ? *init.discriminator
                           : Discriminator::identity(random_direction(d, {config.seed.derive(2), 0}));
  if (disc.input_dim() != d) {
    throw InvalidArgument("flow: discriminator expects dimension " +
                          std::to_string(disc.input_dim()) + ", target has " + std::to_string(d));
  }

  const bool can_eval = d == 2 && target.size() == n;
  auto evaluate = [&](std::vector<std::pair<std::size_t, double>>& history, std::size_t step) {
    history.emplace_back(step, grid_oracle_2d(PointCloud(n, d, particles), target).value);
  };

  TrainingReport report{{}, PointCloud(n, d, particles), {}, disc, 0};
  report.loss_history.reserve(config.outer_steps);
  const Seed batch_seed = config.seed.derive(3);
  const Seed fallback_seed = config.seed.derive(4);

  for (std::size_t step = 0; step < config.outer_steps; ++step) {
    if (can_eval && (config.eval_interval == 0 ? step == 0 : step % config.eval_interval == 0)) {
      evaluate(report.eval_history, step);
    }
    Philox rng({batch_seed, step});
    std::vector<std::size_t> real_idx, fake_idx;
    auto draw = [&] {
      real_idx = draw_batch(rng, target.size(), m, config.with_replacement);
      fake_idx = draw_batch(rng, n, m, config.with_replacement);
    };

    bool fell_back = false;
    for (std::size_t inner = 0; inner < config.k; ++inner) {
      draw();
      const PointCloud real = target.subset(real_idx);
      const PointCloud fake = gather(particles, d, fake_idx);
      if (config.surrogate == Surrogate::kLogistic) {
        logistic_step(real, fake, disc, config.discriminator_rate, config.grad_clip);
      } else {
        try {
          disc.set_omega(moment_separator_direction(disc.features(real), disc.features(fake)));
        } catch (const DegenerateDirection&) {
          disc.set_omega(random_direction(disc.feature_dim(), {fallback_seed, step}));
          fell_back = true;
        }
      }
    }
    if (fell_back) ++report.fallback_steps;

    if (!config.share_minibatch || config.k == 0) draw();
    const PointCloud real = target.subset(real_idx);
    const PointCloud fake = gather(particles, d, fake_idx);
    report.loss_history.emplace_back(step, sorted_projected_loss(fake, real, disc));
    const ParticleGradient g = generator_gradient(fake, real, disc);
    for (std::size_t j = 0; j < fake_idx.size(); ++j) {
      double* x = particles.data() + fake_idx[j] * d;
      const auto gj = g.row(j);
      for (std::size_t k = 0; k < d; ++k) x[k] -= config.generator_rate * gj[k];
    }
  }

  if (can_eval) evaluate(report.eval_history, config.outer_steps);
  report.final_particles = PointCloud(n, d, std::move(particles));
  report.final_discriminator = std::move(disc);
  return report;
}

PointCloud make_ring_mixture(std::size_t n, Seed seed, double radius, double stddev,
                             std::size_t components) {
  if (n == 0 || components == 0) throw InvalidArgument("make_ring_mixture: empty mixture");
  Philox rng({seed, 0});
  std::vector<double> out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i % components) /
                         static_cast<double>(components);
    out[2 * i] = radius * std::cos(angle) + stddev * rng.normal();
    out[2 * i + 1] = radius * std::sin(angle) + stddev * rng.normal();
  }
  return PointCloud(n, 2, std::move(out));
}

}  // namespace maxsliced
