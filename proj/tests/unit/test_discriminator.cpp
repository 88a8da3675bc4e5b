#include <doctest.h>

#include "maxsliced/discriminator.hpp"
#include "maxsliced/errors.hpp"

using namespace maxsliced;

TEST_CASE("identity discriminator") {
  const auto d = Discriminator::identity(UnitDirection({0.6, 0.8}));
  CHECK(d.kind() == FeatureKind::kIdentity);
  CHECK(d.input_dim() == 2);
  CHECK(d.feature_dim() == 2);
  CHECK(d.project(PointCloud({{3.0, 4.0}}))[0] == doctest::Approx(5.0));
  CHECK(d.input_direction() == std::vector<double>{0.6, 0.8});
}

TEST_CASE("fixed linear and affine features") {
  const auto f = Discriminator::fixed_linear(1, 2, {2.0, -1.0}, UnitDirection({1.0}));
  CHECK(f.features(std::vector<double>{1.0, 1.0}) == std::vector<double>{1.0});
  CHECK(f.input_direction() == std::vector<double>{2.0, -1.0});
  CHECK_THROWS_AS(Discriminator::fixed_linear(1, 2, {1.0}, UnitDirection({1.0})), InvalidArgument);
  CHECK_THROWS_AS(Discriminator::fixed_linear(2, 2, {1, 0, 0, 1}, UnitDirection({1.0})),
                  InvalidArgument);

  auto a = Discriminator::trainable_affine(2, 2, {1, 2, 3, 4}, {1, -1}, UnitDirection({0.0, 1.0}));
  const auto h = a.features(PointCloud({{1.0, 0.0}}));
  CHECK(h.point(0)[0] == 2.0);
  CHECK(h.point(0)[1] == 2.0);
  CHECK(a.project(PointCloud({{1.0, 0.0}}))[0] == 2.0);
  CHECK(a.input_direction() == std::vector<double>{3.0, 4.0});
  a.set_affine({1, 0, 0, 1}, {0, 0});
  CHECK(a.input_direction() == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS((void)f.features(std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("discriminator setters validate") {
  auto d = Discriminator::identity(UnitDirection({1.0, 0.0}));
  CHECK_THROWS_AS(d.set_omega(UnitDirection({1.0})), InvalidArgument);
  CHECK_THROWS_AS(d.set_affine({1, 0, 0, 1}, {0, 0}), InvalidArgument);
  d.set_bias(0.25);
  CHECK(d.bias() == 0.25);
}
