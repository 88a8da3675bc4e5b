#include "maxsliced/gaussian_sim.hpp"

#include <cmath>
#include <string>

#include "maxsliced/errors.hpp"
#include "maxsliced/projection.hpp"

namespace maxsliced {
namespace {

// Absorbs the rounding of repeated subtraction: steps of 0.1 from 1.0 reach
// the band after exactly nine.
constexpr double kBandSlack = 1e-9;

}  // namespace

void GaussianSimConfig::validate() const {
  if (d == 0) throw InvalidArgument("gaussian-sim: d must be at least 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("gaussian-sim: alpha must be positive");
  }
  if (!std::isfinite(beta0)) throw InvalidArgument("gaussian-sim: beta0 must be finite");
  if (num_directions == 0) throw InvalidArgument("gaussian-sim: num_directions must be at least 1");
  if (max_steps == 0) throw InvalidArgument("gaussian-sim: max_steps must be at least 1");
  if (e_hat && e_hat->dim() != d) {
    throw InvalidArgument("gaussian-sim: e_hat has dimension " + std::to_string(e_hat->dim()) +
                          " but d = " + std::to_string(d));
  }
}

UnitDirection GaussianSimConfig::direction() const {
  return e_hat ? *e_hat : UnitDirection::axis(d, 0);
}

double projected_w2_gaussian(double beta, const UnitDirection& e_hat, const UnitDirection& w) {
  if (e_hat.dim() != w.dim()) {
    throw InvalidArgument("projected_w2_gaussian: dimension mismatch (" +
                          std::to_string(e_hat.dim()) + " vs " + std::to_string(w.dim()) + ")");
  }
  return std::abs(beta) * std::abs(e_hat.dot(w.components()));
}

Trajectory run_simulation(const GaussianSimConfig& config) {
  config.validate();
  const UnitDirection e = config.direction();
  const double band = config.alpha * (1.0 + kBandSlack);

  Trajectory traj;
  traj.betas.emplace_back(0, config.beta0);
  double beta = config.beta0;

  std::optional<DirectionSet> fixed;
  if (config.mode == SimMode::kSliced && !config.resample) {
    fixed = sample_directions(config.num_directions, config.d, config.seed.derive(0));
  }

  double total_decrement = 0.0;
  std::size_t step = 0;
  while (std::abs(beta) > band && step < config.max_steps) {
    // d/dbeta of beta |e.w| is |e.w| (beta > 0); sign(beta) extends to beta < 0.
    double slope = 1.0;
    if (config.mode == SimMode::kSliced) {
      const DirectionSet dirs =
          fixed ? *fixed : sample_directions(config.num_directions, config.d,
                                             config.seed.derive(step));
      double acc = 0.0;
      for (const auto& w : dirs) acc += std::abs(e.dot(w.components()));
      slope = acc / static_cast<double>(dirs.size());
    } else {
      slope = std::abs(e.dot(e.components()));
    }
    const double next = beta - std::copysign(config.alpha * slope, beta);
    total_decrement += std::abs(next - beta);
    beta = next;
    ++step;
    traj.betas.emplace_back(step, beta);
  }
  traj.converged = std::abs(beta) <= band;
  traj.decrement_mean = step == 0 ? 0.0 : total_decrement / static_cast<double>(step);
  return traj;
}

}  // namespace maxsliced
