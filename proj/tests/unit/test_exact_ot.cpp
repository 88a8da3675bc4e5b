#include <doctest.h>

#include <cmath>

#include "maxsliced/errors.hpp"
#include "maxsliced/exact_ot.hpp"
#include "maxsliced/ot1d.hpp"
#include "oracles.hpp"

using namespace maxsliced;

TEST_CASE("exact W2 examples") {
  const PointCloud d({{0.0, 0.0}, {1.0, 0.0}});
  const auto self = w2_exact(d, d);
  CHECK(self.value == 0.0);
  CHECK(self.assignment.matching == std::vector<std::size_t>{0, 1});

  CHECK(w2_exact(PointCloud({{0.0, 0.0}}), PointCloud({{3.0, 4.0}})).value == doctest::Approx(5.0));

  const auto r = w2_exact(d, PointCloud({{0.0, 1.0}, {1.0, 1.0}}));
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.assignment.matching == std::vector<std::size_t>{0, 1});
  CHECK(r.assignment.cost == doctest::Approx(1.0));
}

TEST_CASE("exact W2 errors") {
  CHECK_THROWS_AS(w2_exact(PointCloud(1, 1, {0.0}), PointCloud(2, 1, {0.0, 1.0})), InvalidArgument);
  CHECK_THROWS_AS(w2_exact(PointCloud({{0.0, 0.0}}), PointCloud(1, 1, {0.0})), InvalidArgument);
  Philox rng({Seed{3}, 0});
  const auto big = testing::gaussian_cloud(9, 1, rng);
  try {
    (void)w2_exact(big, big, 8);
    FAIL("expected cap error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("subsampl") != std::string::npos);
  }
}

TEST_CASE("assignment solver against brute force") {
  Philox rng({Seed{4}, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const std::size_t d = 1 + rng.below(4);
    const auto a = testing::gaussian_cloud(n, d, rng), b = testing::gaussian_cloud(n, d, rng);
    const auto r = w2_exact(a, b);
    CHECK(std::abs(r.assignment.cost - testing::brute_force_w2_squared(a, b)) <= 1e-10);
    CHECK(matching_cost(a, b, r.assignment.matching) == doctest::Approx(r.assignment.cost));
  }
}

TEST_CASE("assignment on a hand matrix") {
  const std::vector<double> cost{4, 1, 3,  //
                                 2, 0, 5,  //
                                 3, 2, 2};
  const auto r = solve_assignment(cost, 3);
  CHECK(r.cost == 5.0);
  CHECK(r.matching == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("exact W2 reduces to sorting in one dimension") {
  Philox rng({Seed{5}, 0});
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(60);
    const auto a = testing::gaussian_cloud(n, 1, rng), b = testing::gaussian_cloud(n, 1, rng);
    CHECK(std::abs(w2_exact(a, b).value -
                   std::sqrt(sorted_w2_squared(a.data(), b.data()))) <= 1e-10);
  }
}

TEST_CASE("exact W2 metric properties") {
  Philox rng({Seed{6}, 0});
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(20);
    const auto a = testing::gaussian_cloud(n, 3, rng), b = testing::gaussian_cloud(n, 3, rng),
               c = testing::gaussian_cloud(n, 3, rng);
    CHECK(w2_exact(a, b).value == doctest::Approx(w2_exact(b, a).value));
    CHECK(w2_exact(a, c).value <= w2_exact(a, b).value + w2_exact(b, c).value + 1e-10);
    const std::vector<double> shift{1.0, -2.0, 0.5};
    CHECK(w2_exact(a.translated(shift), b.translated(shift)).value ==
          doctest::Approx(w2_exact(a, b).value));
    CHECK(w2_exact(a.scaled(2.0), b.scaled(2.0)).value ==
          doctest::Approx(2.0 * w2_exact(a, b).value));
  }
}
