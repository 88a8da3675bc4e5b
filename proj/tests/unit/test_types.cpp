#include <doctest.h>

#include <cmath>
#include <limits>

#include "maxsliced/errors.hpp"
#include "maxsliced/types.hpp"

using namespace maxsliced;

TEST_CASE("point cloud construction is validated") {
  CHECK_THROWS_AS(PointCloud(0, 2, {}), InvalidArgument);
  CHECK_THROWS_AS(PointCloud(1, 0, {}), InvalidArgument);
  CHECK_THROWS_AS(PointCloud(2, 2, {1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(PointCloud({{1.0, 2.0}, {3.0}}), InvalidArgument);
  CHECK_THROWS_AS(PointCloud(1, 1, {std::numeric_limits<double>::quiet_NaN()}), InvalidArgument);
  CHECK_THROWS_AS(PointCloud(1, 1, {std::numeric_limits<double>::infinity()}), InvalidArgument);

  const PointCloud c({{0.0, 0.0}, {2.0, 4.0}});
  CHECK(c.size() == 2);
  CHECK(c.dim() == 2);
  CHECK(c.mean() == std::vector<double>{1.0, 2.0});
  CHECK(c.point(1)[1] == 4.0);
  const std::vector<double> center{1.0, 2.0};
  CHECK(c.rms_radius(center) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("point cloud transforms") {
  const PointCloud c({{1.0, 2.0}, {3.0, 4.0}});
  const std::vector<double> off{1.0, -1.0};
  CHECK(c.translated(off) == PointCloud({{2.0, 1.0}, {4.0, 3.0}}));
  CHECK(c.scaled(2.0) == PointCloud({{2.0, 4.0}, {6.0, 8.0}}));
  const std::vector<std::size_t> idx{1, 1, 0};
  CHECK(c.subset(idx) == PointCloud({{3.0, 4.0}, {3.0, 4.0}, {1.0, 2.0}}));
}

TEST_CASE("unit directions stay on the sphere") {
  CHECK_THROWS_AS(UnitDirection({1.0, 1.0}), InvalidArgument);
  CHECK_NOTHROW(UnitDirection({0.6, 0.8}));
  const std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(UnitDirection::normalized(zero), DegenerateDirection);
  const std::vector<double> tiny{1e-13, 0.0};
  CHECK_THROWS_AS(UnitDirection::normalized(tiny, 1e-12), DegenerateDirection);
  const std::vector<double> v{3.0, 4.0};
  const auto w = UnitDirection::normalized(v);
  CHECK(w[0] == doctest::Approx(0.6));
  CHECK(w.dot(v) == doctest::Approx(5.0));
  CHECK(w.negated()[1] == doctest::Approx(-0.8));
  CHECK(UnitDirection::axis(3, 2) == UnitDirection({0.0, 0.0, 1.0}));
  CHECK_THROWS(UnitDirection::axis(3, 3));
  const auto t = UnitDirection::from_angle(std::acos(-1.0) / 2);
  CHECK(std::abs(t[0]) < 1e-15);
}

TEST_CASE("direction sets") {
  CHECK_THROWS_AS(DirectionSet({}, Seed{}, DirectionGeneration::kExplicit), InvalidArgument);
  CHECK_THROWS_AS(DirectionSet::explicit_set({UnitDirection::axis(2, 0), UnitDirection::axis(3, 0)}),
                  InvalidArgument);
  const auto grid = DirectionSet::angular_grid(4);
  CHECK(grid.size() == 4);
  CHECK(grid.generation() == DirectionGeneration::kAngularGrid);
  CHECK(grid[2][0] == doctest::Approx(0.0));
  CHECK(grid[2][1] == doctest::Approx(1.0));
}

TEST_CASE("sort permutation is stable") {
  const std::vector<double> v{3.0, 1.0, 2.0, 1.0};
  const auto p = SortPermutation::of(v);
  CHECK(p.indices() == std::vector<std::size_t>{1, 3, 2, 0});
  CHECK(p.apply(v) == std::vector<double>{1.0, 1.0, 2.0, 3.0});
  CHECK(p.sorts(v));
  const std::vector<double> other{0.0, 1.0, 2.0, 3.0};
  CHECK_FALSE(p.sorts(other));
}
