#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxsliced/errors.hpp"
#include "maxsliced/gaussian_sim.hpp"
#include "maxsliced/projection.hpp"

using namespace maxsliced;

TEST_CASE("projected Gaussian distance") {
  const auto e = UnitDirection::axis(5, 0);
  CHECK(projected_w2_gaussian(0.0, e, random_direction(5, {Seed{1}, 0})) == 0.0);
  CHECK(projected_w2_gaussian(2.0, e, e) == 2.0);
  CHECK(projected_w2_gaussian(-2.0, e, e) == 2.0);
  CHECK(projected_w2_gaussian(3.0, e, UnitDirection::axis(5, 3)) == 0.0);
}

TEST_CASE("max-sliced descent is linear and takes nine steps") {
  GaussianSimConfig c;
  c.mode = SimMode::kMaxSliced;
  const auto t = run_simulation(c);
  CHECK(t.converged);
  CHECK(t.steps() == 9);
  for (const auto& [step, beta] : t.betas) CHECK(beta == doctest::Approx(1.0 - 0.1 * step));
}

TEST_CASE("simulation is deterministic") {
  GaussianSimConfig c;
  c.seed = Seed{17};
  const auto a = run_simulation(c), b = run_simulation(c);
  CHECK(a.betas == b.betas);
  c.resample = false;
  CHECK(run_simulation(c).betas == run_simulation(c).betas);
}

TEST_CASE("sliced decrement matches the mean absolute projection") {
  GaussianSimConfig c;
  c.seed = Seed{3};
  const auto t = run_simulation(c);
  const double want = 0.1 * std::sqrt(2.0 / (std::numbers::pi * 100.0));
  CHECK(std::abs(t.decrement_mean - want) <= 0.2 * want);
}

TEST_CASE("simulation config validation") {
  GaussianSimConfig c;
  c.alpha = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.d = 0;
  CHECK_THROWS_AS(run_simulation(c), InvalidArgument);
  c = {};
  c.num_directions = 0;
  CHECK_THROWS_AS(run_simulation(c), InvalidArgument);
  c = {};
  c.e_hat = UnitDirection::axis(3, 0);
  CHECK_THROWS_AS(run_simulation(c), InvalidArgument);
  c = {};
  c.max_steps = 3;
  const auto t = run_simulation(c);
  CHECK_FALSE(t.converged);
  CHECK(t.steps() == 3);
}
