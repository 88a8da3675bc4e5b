#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxsliced/errors.hpp"
#include "maxsliced/maxsliced.hpp"
#include "maxsliced/ot1d.hpp"
#include "maxsliced/projection.hpp"
#include "maxsliced/sliced.hpp"
#include "oracles.hpp"

using namespace maxsliced;

TEST_CASE("grid oracle examples") {
  const auto r = grid_oracle_2d(PointCloud({{0.0, 0.0}}), PointCloud({{3.0, 4.0}}));
  CHECK(r.value == doctest::Approx(5.0));
  CHECK(std::abs(std::abs(r.direction[0]) - 0.6) < 1e-6);
  CHECK(std::abs(std::abs(r.direction[1]) - 0.8) < 1e-6);
  CHECK(r.strategy == SearchStrategy::kGridOracle2d);

  Philox rng({Seed{1}, 0});
  const auto c = testing::gaussian_cloud(9, 2, rng);
  CHECK(grid_oracle_2d(c, c).value == 0.0);

  const auto h = grid_oracle_2d(PointCloud({{-1.0, 0.0}, {1.0, 0.0}}),
                                PointCloud({{0.0, 0.0}, {0.0, 0.0}}));
  CHECK(h.value == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(h.direction[0]) - 1.0) < 1e-9);

  CHECK_THROWS_AS(grid_oracle_2d(PointCloud(1, 1, {0.0}), PointCloud(1, 1, {1.0})), InvalidArgument);
}

TEST_CASE("grid oracle dominates any direction") {
  Philox rng({Seed{2}, 0});
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(20);
    const auto a = testing::gaussian_cloud(n, 2, rng), b = testing::gaussian_cloud(n, 2, rng, 1.5, 0.3);
    const auto g = grid_oracle_2d(a, b);
    CHECK(g.value == doctest::Approx(projected_w2(a, b, g.direction)).epsilon(1e-12));
    CHECK(g.value >= testing::scan_max_sliced(a, b, 20000) - 1e-10);
    // Unrefined grid is a lower bound within the Lipschitz slack.
    const auto coarse = grid_oracle_2d(a, b, {360, false});
    CHECK(coarse.value <= g.value + 1e-12);
  }
}

TEST_CASE("sphere ascent examples") {
  const PointCloud a({{0.0, 0.0}}), b({{3.0, 4.0}});
  const auto r = sphere_ascent(a, b, UnitDirection::axis(2, 0), 200, 1.0);
  CHECK(std::abs(r.value - 5.0) <= 1e-6);
  CHECK(r.strategy == SearchStrategy::kSphereAscent);

  Philox rng({Seed{3}, 0});
  const auto x = testing::gaussian_cloud(15, 1, rng), y = testing::gaussian_cloud(15, 1, rng);
  const auto one = sphere_ascent(x, y, UnitDirection({-1.0}), 10, 1.0);
  CHECK(std::abs(one.direction[0]) == 1.0);
  CHECK(one.value == doctest::Approx(std::sqrt(sorted_w2_squared(x.data(), y.data()))));
}

TEST_CASE("sphere ascent reinitializes from a degenerate start") {
  // Both points project to 0 along (1,0), so the gradient vanishes there.
  const PointCloud a({{0.0, 0.0}}), b({{0.0, 4.0}});
  const auto r = sphere_ascent(a, b, UnitDirection::axis(2, 0), 100, 1.0, Seed{5});
  CHECK(r.value == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(r.reinitializations >= 1);
}

TEST_CASE("sphere ascent restarts match the grid oracle") {
  Philox rng({Seed{4}, 0});
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(31);
    const auto a = testing::gaussian_cloud(n, 2, rng), b = testing::gaussian_cloud(n, 2, rng, 1.3, 0.2);
    const double g = grid_oracle_2d(a, b).value;
    const auto s = sphere_ascent_restarts(a, b, 8, 200, 1.0, Seed{static_cast<std::uint64_t>(trial)});
    CHECK(s.value <= g + 1e-10);
    CHECK(std::abs(s.value - g) <= 1e-4);
  }
}

TEST_CASE("projected gradient matches finite differences") {
  Philox rng({Seed{6}, 0});
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testing::gaussian_cloud(12, 3, rng), b = testing::gaussian_cloud(12, 3, rng);
    const auto w = random_direction(3, {Seed{7}, static_cast<std::uint64_t>(trial)});
    const auto g = projected_w2_squared_gradient(a, b, w);
    auto f = [&](std::vector<double> v) {
      std::vector<double> pa(12), pb(12);
      for (std::size_t i = 0; i < 12; ++i) pa[i] = dot(a.point(i), v), pb[i] = dot(b.point(i), v);
      return sorted_w2_squared(pa, pb);
    };
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<double> up(w.components().begin(), w.components().end()), dn = up;
      up[k] += 1e-6;
      dn[k] -= 1e-6;
      CHECK(g[k] == doctest::Approx((f(up) - f(dn)) / 2e-6).epsilon(1e-5));
    }
  }
}

TEST_CASE("moment separator examples") {
  const auto w = moment_separator_direction(PointCloud({{2.0, 0.0}, {0.0, 2.0}}),
                                            PointCloud({{0.0, 0.0}, {0.0, 0.0}}));
  CHECK(w[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(w[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

  const PointCloud a({{1.0, -2.0}}), b({{4.0, 2.0}});
  const auto m = moment_separator_direction(a, b);
  CHECK(m[0] == doctest::Approx(-0.6));
  CHECK(m[1] == doctest::Approx(-0.8));
  const auto g = grid_oracle_2d(a, b);
  CHECK(std::abs(std::abs(m.dot(g.direction.components())) - 1.0) < 1e-9);

  Philox rng({Seed{8}, 0});
  const auto c = testing::gaussian_cloud(5, 3, rng);
  CHECK_THROWS_AS(moment_separator_direction(c, c), DegenerateDirection);
}

TEST_CASE("logistic surrogate") {
  Philox rng({Seed{9}, 0});
  const auto d = testing::gaussian_cloud(256, 2, rng);
  const auto init = Discriminator::identity(UnitDirection::from_angle(1.0));
  const auto same = logistic_surrogate_direction(d, d, init);
  CHECK(projected_w2(d, d, same.direction) == 0.0);

  std::vector<double> shifted(d.data().begin(), d.data().end());
  Philox rng2({Seed{9}, 1});
  for (std::size_t i = 0; i < 256; ++i) {
    shifted[2 * i] = 4.0 + rng2.normal();
    shifted[2 * i + 1] = rng2.normal();
  }
  const PointCloud f(256, 2, shifted);
  const auto r = logistic_surrogate_direction(f, d, init);
  const double angle = std::acos(std::clamp(r.direction[0], -1.0, 1.0));
  CHECK(angle * 180.0 / std::numbers::pi <= 5.0);
  CHECK(std::abs(norm(r.discriminator.omega().components()) - 1.0) <= 1e-9);

  // Separable data: the parameters grow but every step stays finite.
  auto disc = init;
  for (int i = 0; i < 500; ++i) logistic_step(f.scaled(100.0), d, disc, 5.0, 10.0);
  CHECK(std::isfinite(disc.bias()));
  CHECK(std::isfinite(logistic_objective(f, d, disc)));
}

TEST_CASE("logistic step increases the objective") {
  Philox rng({Seed{10}, 0});
  const auto a = testing::gaussian_cloud(64, 3, rng, 1.0, 0.5), b = testing::gaussian_cloud(64, 3, rng);
  auto disc = Discriminator::identity(random_direction(3, {Seed{1}, 0}));
  double prev = logistic_objective(a, b, disc);
  for (int i = 0; i < 20; ++i) {
    logistic_step(a, b, disc, 0.1, 10.0);
    const double now = logistic_objective(a, b, disc);
    CHECK(now >= prev - 1e-9);
    prev = now;
  }
}

TEST_CASE("bounds examples") {
  const auto pm = check_bounds(PointCloud({{0.0, 0.0}}), PointCloud({{3.0, 4.0}}));
  CHECK(pm.lower == doctest::Approx(25.0));
  CHECK(pm.mid == doctest::Approx(25.0));
  CHECK(pm.upper == doctest::Approx(25.0));

  Philox rng({Seed{11}, 0});
  const auto c = testing::gaussian_cloud(6, 2, rng);
  const auto z = check_bounds(c, c);
  CHECK(z.lower == 0.0);
  CHECK(z.mid == 0.0);
  CHECK(z.upper == 0.0);

  const PointCloud a({{-1.0, 0.0}, {1.0, 0.0}}), b({{0.0, 0.0}, {0.0, 0.0}});
  const auto h = check_bounds(a, b, {.seed = Seed{3}});
  CHECK(h.fallback);
  CHECK(h.lower == 0.0);
  CHECK(h.mid == doctest::Approx(h.direction[0] * h.direction[0]));
  CHECK(h.upper == doctest::Approx(1.0));
  CHECK(h.mid <= h.upper);
}

TEST_CASE("bounds chain with sphere ascent in higher dimension") {
  Philox rng({Seed{12}, 0});
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testing::gaussian_cloud(30, 5, rng, 1.0, 0.4), b = testing::gaussian_cloud(30, 5, rng);
    const auto r = check_bounds(a, b, {.upper = UpperStrategy::kSphereAscent, .seed = Seed{1}});
    CHECK(r.lower <= r.mid + 1e-9);
    CHECK(r.mid <= r.upper + 1e-9);
  }
}

TEST_CASE("max-sliced dominates sliced") {
  Philox rng({Seed{13}, 0});
  const auto a = testing::gaussian_cloud(32, 2, rng), b = testing::gaussian_cloud(32, 2, rng, 2.0);
  const auto s = sliced_distance(a, b, sample_directions(64, 2, Seed{1}), Order(2.0));
  CHECK(s.max_term() <= grid_oracle_2d(a, b).value + 1e-10);
}
