#include "maxsliced/complexity_lab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxsliced/errors.hpp"
#include "maxsliced/maxsliced.hpp"
#include "maxsliced/projection.hpp"
#include "maxsliced/sliced.hpp"

namespace maxsliced {

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::kExact: return "exact";
    case Estimator::kSliced: return "sliced";
    case Estimator::kMaxSliced: return "max-sliced";
  }
  return "unknown";
}

void ComplexityConfig::validate() const {
  if (d_grid.empty() || n_grid.empty()) throw InvalidArgument("complexity: empty grid");
  for (std::size_t d : d_grid) {
    if (d == 0) throw InvalidArgument("complexity: d_grid entries must be at least 1");
  }
  for (std::size_t n : n_grid) {
    if (n == 0) throw InvalidArgument("complexity: n_grid entries must be at least 1");
    if (n > exact_cap) {
      throw InvalidArgument("complexity: n = " + std::to_string(n) +
                            " exceeds the exact-W2 cap of " + std::to_string(exact_cap));
    }
  }
  if (trials == 0) throw InvalidArgument("complexity: trials must be at least 1");
  if (num_directions == 0) throw InvalidArgument("complexity: num_directions must be at least 1");
  if (ascent_steps == 0) throw InvalidArgument("complexity: ascent_steps must be at least 1");
  if (!(ascent_rate > 0.0)) throw InvalidArgument("complexity: ascent_rate must be positive");
  if (!std::isfinite(mean_offset)) throw InvalidArgument("complexity: mean_offset must be finite");
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

namespace {

double median_of(const GapTable& table, Estimator e, std::size_t d, std::size_t n,
                 double GapRow::*field) {
  std::vector<double> values;
  for (const auto& row : table.rows) {
    if (row.estimator == e && row.d == d && row.n == n) values.push_back(row.*field);
  }
  return median(std::move(values));
}

PointCloud gaussian_sample(std::size_t n, std::size_t d, double offset, StreamKey key) {
  Philox rng(key);
  std::vector<double> data(n * d);
  for (double& v : data) v = rng.normal();
  for (std::size_t i = 0; i < n; ++i) data[i * d] += offset;
  return PointCloud(n, d, std::move(data));
}

}  // namespace

double GapTable::median_estimate(Estimator e, std::size_t d, std::size_t n) const {
  return median_of(*this, e, d, n, &GapRow::estimate);
}

double GapTable::median_gap(Estimator e, std::size_t d, std::size_t n) const {
  return median_of(*this, e, d, n, &GapRow::gap);
}

double population_distance(Estimator e, std::size_t d, double delta) {
  if (d == 0) throw InvalidArgument("population_distance: d must be at least 1");
  const double magnitude = std::abs(delta);
  if (e == Estimator::kSliced) return magnitude * std::sqrt(sphere_abs_moment(d, 2.0));
  return magnitude;
}

GapTable run_complexity_study(const ComplexityConfig& config) {
  config.validate();
  const Order w2(2.0);
  GapTable table;
  for (std::size_t d : config.d_grid) {
    for (std::size_t n : config.n_grid) {
      const Seed cell = config.seed.derive(d).derive(n);
      for (std::size_t trial = 0; trial < config.trials; ++trial) {
        const Seed trial_seed = cell.derive(trial);
        const PointCloud mu = gaussian_sample(n, d, 0.0, {trial_seed, 0});
        const PointCloud nu = gaussian_sample(n, d, config.mean_offset, {trial_seed, 1});

        const double exact = w2_exact(mu, nu, config.exact_cap).value;

        const DirectionSet dirs =
            sample_directions(config.num_directions, d, trial_seed.derive(2));
        const SlicedReport sliced = sliced_distance(mu, nu, dirs, w2);

        // Seed the ascent with the best sampled direction so max >= sliced.
        std::size_t best = 0;
        for (std::size_t i = 1; i < sliced.per_direction.size(); ++i) {
          if (sliced.per_direction[i].second > sliced.per_direction[best].second) best = i;
        }
        const UnitDirection inits[] = {sliced.per_direction[best].first};
        const double max_sliced =
            sphere_ascent_restarts(mu, nu, config.restarts, config.ascent_steps,
                                   config.ascent_rate, trial_seed.derive(3), inits)
                .value;

        const std::pair<Estimator, double> estimates[] = {
            {Estimator::kExact, exact},
            {Estimator::kSliced, sliced.value},
            {Estimator::kMaxSliced, max_sliced}};
        for (const auto& [est, value] : estimates) {
          const double pop = population_distance(est, d, config.mean_offset);
          table.rows.push_back({est, d, n, trial, value, pop, std::abs(value - pop)});
        }
      }
    }
  }
  return table;
}

}  // namespace maxsliced
