#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "cli/cloud_io.hpp"
#include "cli/svg_plot.hpp"
#include "maxsliced/complexity_lab.hpp"
#include "maxsliced/errors.hpp"
#include "maxsliced/exact_ot.hpp"
#include "maxsliced/flow.hpp"
#include "maxsliced/gaussian_sim.hpp"
#include "maxsliced/maxsliced.hpp"
#include "maxsliced/projection.hpp"
#include "maxsliced/sliced.hpp"

namespace maxsliced::cli {
namespace {

namespace fs = std::filesystem;

/// Raised for option combinations CLI11 cannot express; maps to kBadConfig.
class ConfigProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string out;
  std::string plot;
  std::optional<std::uint64_t> seed;
};

struct Context {
  CLI::App* sub = nullptr;
  std::string name;
  CommonOptions common;
  std::ostream* out = nullptr;
};

void add_common(CLI::App* sub, CommonOptions& c, bool seed_required) {
  sub->add_option("--config", "Flat key=value file with option values (command line wins)");
  sub->add_option("--out", c.out, "CSV output path (default: $" + std::string(kOutDirEnv) +
                                      "/<subcommand>.csv)");
  sub->add_option("--plot", c.plot, "Optional SVG line plot of the primary series");
  auto* seed = sub->add_option("--seed", c.seed, "Root seed of every random draw");
  if (seed_required) seed->required();
}

Seed require_seed(const Context& ctx, const std::string& why) {
  if (!ctx.common.seed) throw ConfigProblem("--seed is required " + why);
  return Seed{*ctx.common.seed};
}

/// Explicit --out, else $MAXSLICED_OUT_DIR/<name>.csv, else ./<name>.csv when
/// `fallback_to_cwd`, else no file.
std::string output_path(const Context& ctx, bool fallback_to_cwd) {
  if (!ctx.common.out.empty()) return ctx.common.out;
  if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
    return (fs::path(dir) / (ctx.name + ".csv")).string();
  }
  return fallback_to_cwd ? ctx.name + ".csv" : std::string{};
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
  if (!f) throw Error("failed writing '" + path + "'");
}

/// Writes the CSV and its `.manifest` sidecar with the full configuration.
void emit(const Context& ctx, const std::string& path, const std::string& csv,
          const std::string& note = {}) {
  if (path.empty()) return;
  write_file(path, csv);
  std::ostringstream manifest;
  manifest << "# maxsliced " << ctx.name << "\n";
  if (!note.empty()) manifest << "# " << note << "\n";
  manifest << "# output: " << path << "\n";
  manifest << ctx.sub->config_to_str(true, false);
  write_file(path + ".manifest", manifest.str());
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  row += '\n';
  return row;
}

std::string fmt(double v) { return format_real(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

// ---------------------------------------------------------------- dist

struct DistOptions {
  std::string left, right;
  std::string method = "exact";
  double p = 2.0;
  std::size_t directions = 64;
  std::string aggregation = "power-mean";
  std::size_t restarts = 8;
  std::size_t steps = 200;
  double rate = 1.0;
  std::size_t angles = 3600;
};

void run_dist(const Context& ctx, const DistOptions& o) {
  const PointCloud left = load_cloud(o.left);
  const PointCloud right = load_cloud(o.right);
  double value = 0.0;
  if (o.method == "exact") {
    value = w2_exact(left, right).value;
  } else if (o.method == "sliced") {
    const Seed seed = require_seed(ctx, "for --method sliced");
    const auto dirs = sample_directions(o.directions, left.dim(), seed);
    value = sliced_distance(left, right, dirs, Order(o.p),
                            o.aggregation == "mean" ? Aggregation::kMeanOfDistances
                                                    : Aggregation::kPowerMean)
                .value;
  } else if (o.method == "max-sliced") {
    const Seed seed = require_seed(ctx, "for --method max-sliced");
    value = sphere_ascent_restarts(left, right, o.restarts, o.steps, o.rate, seed).value;
  } else if (o.method == "grid") {
    value = grid_oracle_2d(left, right, {o.angles, true}).value;
  } else {  // moment
    const auto w = moment_separator_direction(left, right);
    value = projected_w2(left, right, w);
  }
  *ctx.out << fmt(value) << '\n';
  emit(ctx, output_path(ctx, false), csv_row({"method", "value"}) + csv_row({o.method, fmt(value)}));
}

// ---------------------------------------------------------------- gaussian-sim

struct SimOptions {
  std::size_t d = 100;
  double beta0 = 1.0;
  double alpha = 0.1;
  std::string mode = "sliced";
  std::size_t directions = 10;
  bool resample = true;
  std::size_t max_steps = 100000;
};

void run_gaussian_sim(const Context& ctx, const SimOptions& o) {
  GaussianSimConfig config;
  config.d = o.d;
  config.beta0 = o.beta0;
  config.alpha = o.alpha;
  config.mode = o.mode == "sliced" ? SimMode::kSliced : SimMode::kMaxSliced;
  config.num_directions = o.directions;
  config.resample = o.resample;
  config.max_steps = o.max_steps;
  config.seed = require_seed(ctx, "");
  const Trajectory traj = run_simulation(config);

  std::string csv = csv_row({"step", "beta"});
  Series series{o.mode + " (" + std::to_string(o.directions) + " directions)", {}};
  for (const auto& [step, beta] : traj.betas) {
    csv += csv_row({fmt(step), fmt(beta)});
    series.points.emplace_back(static_cast<double>(step), beta);
  }
  *ctx.out << "steps=" << traj.steps() << " converged=" << (traj.converged ? "true" : "false")
           << " decrement_mean=" << fmt(traj.decrement_mean) << '\n';
  emit(ctx, output_path(ctx, true), csv);
  if (!ctx.common.plot.empty()) {
    write_line_plot(ctx.common.plot, "Mean learning, d = " + std::to_string(o.d), "step", "beta",
                    {series});
  }
}

// ---------------------------------------------------------------- bounds

struct BoundsCliOptions {
  std::string left, right;
  std::string upper = "grid";
  std::size_t angles = 3600;
  std::size_t restarts = 8;
  std::size_t steps = 200;
  double rate = 1.0;
};

void run_bounds(const Context& ctx, const BoundsCliOptions& o) {
  const PointCloud left = load_cloud(o.left);
  const PointCloud right = load_cloud(o.right);
  BoundsOptions options;
  options.upper = o.upper == "grid" ? UpperStrategy::kGridOracle : UpperStrategy::kSphereAscent;
  options.grid.n_angles = o.angles;
  options.restarts = o.restarts;
  options.steps = o.steps;
  options.rate = o.rate;
  options.seed = require_seed(ctx, "");
  const BoundsReport r = check_bounds(left, right, options);
  const std::string fallback = r.fallback ? "true" : "false";
  *ctx.out << "lower=" << fmt(r.lower) << " mid=" << fmt(r.mid) << " upper=" << fmt(r.upper)
           << " fallback=" << fallback << '\n';
  emit(ctx, output_path(ctx, true),
       csv_row({"lower", "mid", "upper", "fallback"}) +
           csv_row({fmt(r.lower), fmt(r.mid), fmt(r.upper), fallback}));
}

// ---------------------------------------------------------------- complexity

constexpr const char* kComplexityNote =
    "small-scale probe: compares the direction and ordering of empirical gaps, "
    "not asymptotic sample-complexity rates";

void run_complexity(const Context& ctx, ComplexityConfig config) {
  config.seed = require_seed(ctx, "");
  const GapTable table = run_complexity_study(config);
  std::string csv = csv_row({"estimator", "d", "n", "trial", "estimate", "population", "gap"});
  for (const auto& row : table.rows) {
    csv += csv_row({std::string(to_string(row.estimator)), fmt(row.d), fmt(row.n),
                    fmt(row.trial), fmt(row.estimate), fmt(row.population), fmt(row.gap)});
  }
  *ctx.out << "# " << kComplexityNote << '\n';
  const std::size_t n_max = config.n_grid.back();
  std::vector<Series> series;
  for (Estimator e : {Estimator::kExact, Estimator::kSliced, Estimator::kMaxSliced}) {
    Series s{std::string(to_string(e)), {}};
    for (std::size_t d : config.d_grid) {
      const double med = table.median_estimate(e, d, n_max);
      *ctx.out << to_string(e) << " d=" << d << " n=" << n_max << " median=" << fmt(med) << '\n';
      s.points.emplace_back(static_cast<double>(d), med);
    }
    series.push_back(std::move(s));
  }
  emit(ctx, output_path(ctx, true), csv, kComplexityNote);
  if (!ctx.common.plot.empty()) {
    write_line_plot(ctx.common.plot, "Median empirical distance, n = " + std::to_string(n_max),
                    "dimension", "distance", series);
  }
}

// ---------------------------------------------------------------- flow

struct FlowCliOptions {
  FlowConfig config;
  std::string target;
  std::string surrogate = "logistic";
  std::string feature = "identity";
  std::string particles_out;
  std::string eval_out;
};

void run_flow(const Context& ctx, FlowCliOptions o) {
  FlowConfig& config = o.config;
  config.seed = require_seed(ctx, "");
  config.surrogate = o.surrogate == "logistic" ? Surrogate::kLogistic : Surrogate::kMomentSeparator;
  const PointCloud target = o.target.empty() ? make_ring_mixture(config.n, config.seed.derive(99))
                                             : load_cloud(o.target);
  FlowInit init;
  if (o.feature == "affine") {
    const std::size_t d = target.dim();
    std::vector<double> eye(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) eye[i * d + i] = 1.0;
    init.discriminator = Discriminator::trainable_affine(
        d, d, std::move(eye), std::vector<double>(d, 0.0),
        random_direction(d, {config.seed.derive(2), 0}));
  }
  const TrainingReport report = train(target, config, init);

  std::string csv = csv_row({"step", "loss"});
  Series loss{"loss", {}};
  for (const auto& [step, value] : report.loss_history) {
    csv += csv_row({fmt(step), fmt(value)});
    loss.points.emplace_back(static_cast<double>(step), value);
  }
  emit(ctx, output_path(ctx, true), csv);

  Series eval{"max-sliced distance", {}};
  std::string eval_csv = csv_row({"step", "max_sliced"});
  for (const auto& [step, value] : report.eval_history) {
    eval_csv += csv_row({fmt(step), fmt(value)});
    eval.points.emplace_back(static_cast<double>(step), value);
  }
  if (!o.eval_out.empty()) write_file(o.eval_out, eval_csv);
  if (!o.particles_out.empty()) {
    std::ostringstream pts;
    write_cloud(pts, report.final_particles);
    write_file(o.particles_out, pts.str());
  }
  if (!report.eval_history.empty()) {
    *ctx.out << "max_sliced initial=" << fmt(report.eval_history.front().second)
             << " final=" << fmt(report.eval_history.back().second) << '\n';
  }
  *ctx.out << "final_loss=" << fmt(report.loss_history.back().second)
           << " fallback_steps=" << report.fallback_steps << '\n';
  if (!ctx.common.plot.empty()) {
    std::vector<Series> series{loss};
    if (!eval.points.empty()) series.push_back(eval);
    write_line_plot(ctx.common.plot, "Particle flow", "outer step", "value", series);
  }
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

/// Replaces `--config FILE` after the subcommand by the file's entries, each
/// turned into `--key=value` unless the key is already on the command line.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  if (args.empty()) return args;
  const CLI::App* sub = app.get_subcommand_no_throw(args.front());
  if (sub == nullptr) return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  const auto items = CLI::ConfigINI().from_file(path);
  std::vector<std::string> extra;
  for (const auto& item : items) {
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub->get_name())) {
      throw CLI::ConfigError::Extras(item.fullname());
    }
    const std::string flag = "--" + item.name;
    if (item.name == "config") continue;
    if (sub->get_option_no_throw(flag) == nullptr) throw CLI::ConfigError::Extras(item.name);
    if (given(args, flag)) continue;
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    if (value.empty()) continue;
    extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sliced and max-sliced Wasserstein experiments", "maxsliced"};
  app.require_subcommand(1, 1);

  std::map<std::string, Context> contexts;
  std::map<std::string, std::function<void(const Context&)>> actions;
  auto make = [&](const std::string& name, const std::string& help, bool seed_required) {
    CLI::App* sub = app.add_subcommand(name, help);
    Context& ctx = contexts[name];
    ctx.sub = sub;
    ctx.name = name;
    ctx.out = &out;
    add_common(sub, ctx.common, seed_required);
    return sub;
  };

  DistOptions dist;
  {
    auto* s = make("dist", "Distance between two point-cloud CSV files", false);
    s->add_option("--left", dist.left, "First cloud")->required()->check(CLI::ExistingFile);
    s->add_option("--right", dist.right, "Second cloud")->required()->check(CLI::ExistingFile);
    s->add_option("--method", dist.method, "exact | sliced | max-sliced | grid | moment")
        ->check(CLI::IsMember({"exact", "sliced", "max-sliced", "grid", "moment"}))
        ->capture_default_str();
    s->add_option("--p", dist.p, "Transport order for --method sliced")
        ->check(CLI::Range(1.0, 1e300))
        ->capture_default_str();
    s->add_option("--directions", dist.directions, "Sliced direction budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--aggregation", dist.aggregation, "power-mean | mean")
        ->check(CLI::IsMember({"power-mean", "mean"}))
        ->capture_default_str();
    s->add_option("--restarts", dist.restarts, "Sphere-ascent random restarts")->capture_default_str();
    s->add_option("--steps", dist.steps, "Sphere-ascent steps per restart")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--rate", dist.rate, "Sphere-ascent initial rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--angles", dist.angles, "Grid-oracle angles over [0, pi)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
        ->capture_default_str();
    actions["dist"] = [&](const Context& c) { run_dist(c, dist); };
  }

  SimOptions sim;
  {
    auto* s = make("gaussian-sim", "Mean learning of N(beta e, I) by sliced or max-sliced descent", true);
    s->add_option("--d", sim.d, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--beta0", sim.beta0, "Initial mean magnitude")->capture_default_str();
    s->add_option("--alpha", sim.alpha, "Learning rate")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--mode", sim.mode, "sliced | max")
        ->transform(CLI::IsMember({"sliced", "max", "max-sliced"}))
        ->capture_default_str();
    s->add_option("--directions", sim.directions, "Directions per step (sliced mode)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--resample", sim.resample, "Draw fresh directions every step")->capture_default_str();
    s->add_option("--max-steps", sim.max_steps, "Step budget")->check(CLI::PositiveNumber)->capture_default_str();
    actions["gaussian-sim"] = [&](const Context& c) {
      if (sim.mode == "max-sliced") sim.mode = "max";
      run_gaussian_sim(c, sim);
    };
  }

  BoundsCliOptions bounds;
  {
    auto* s = make("bounds", "Mean-difference / separator / max-sliced sandwich", true);
    s->add_option("--left", bounds.left, "First cloud")->required()->check(CLI::ExistingFile);
    s->add_option("--right", bounds.right, "Second cloud")->required()->check(CLI::ExistingFile);
    s->add_option("--upper", bounds.upper, "grid | ascent")
        ->check(CLI::IsMember({"grid", "ascent"}))
        ->capture_default_str();
    s->add_option("--angles", bounds.angles, "Grid-oracle angles")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
        ->capture_default_str();
    s->add_option("--restarts", bounds.restarts, "Sphere-ascent random restarts")->capture_default_str();
    s->add_option("--steps", bounds.steps, "Sphere-ascent steps")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--rate", bounds.rate, "Sphere-ascent rate")->check(CLI::PositiveNumber)->capture_default_str();
    actions["bounds"] = [&](const Context& c) { run_bounds(c, bounds); };
  }

  ComplexityConfig complexity;
  {
    auto* s = make("complexity", "Empirical distance gaps for Gaussian samples", true);
    s->add_option("--d-grid", complexity.d_grid, "Dimensions")->delimiter(',')->capture_default_str();
    s->add_option("--n-grid", complexity.n_grid, "Sample sizes")->delimiter(',')->capture_default_str();
    s->add_option("--trials", complexity.trials, "Trials per cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--delta", complexity.mean_offset, "Mean offset along e_1")->capture_default_str();
    s->add_option("--directions", complexity.num_directions, "Sliced direction budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--restarts", complexity.restarts, "Max-sliced random restarts")->capture_default_str();
    s->add_option("--steps", complexity.ascent_steps, "Ascent steps")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--rate", complexity.ascent_rate, "Ascent rate")->check(CLI::PositiveNumber)->capture_default_str();
    actions["complexity"] = [&](const Context& c) { run_complexity(c, complexity); };
  }

  FlowCliOptions flow;
  {
    FlowConfig& f = flow.config;
    auto* s = make("flow", "Adversarial particle flow toward a target cloud", true);
    s->add_option("--target", flow.target, "Target cloud CSV (default: 8-Gaussian ring)")
        ->check(CLI::ExistingFile);
    s->add_option("--n", f.n, "Particles")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--k", f.k, "Surrogate steps per outer step")->capture_default_str();
    s->add_option("--generator-rate", f.generator_rate, "Particle learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--discriminator-rate", f.discriminator_rate, "Surrogate learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--surrogate", flow.surrogate, "logistic | moment")
        ->check(CLI::IsMember({"logistic", "moment"}))
        ->capture_default_str();
    s->add_option("--feature", flow.feature, "identity | affine")
        ->check(CLI::IsMember({"identity", "affine"}))
        ->capture_default_str();
    s->add_option("--outer-steps", f.outer_steps, "Outer steps")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--minibatch", f.minibatch, "Batch size per side (0: full batch)")->capture_default_str();
    s->add_option("--with-replacement", f.with_replacement, "Sample batches with replacement")
        ->capture_default_str();
    s->add_option("--share-minibatch", f.share_minibatch,
                  "Reuse the last surrogate batch for the generator step")
        ->capture_default_str();
    s->add_option("--eval-interval", f.eval_interval, "Max-sliced evaluation interval (0: ends)")
        ->capture_default_str();
    s->add_option("--grad-clip", f.grad_clip, "Surrogate gradient-norm cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--init-scale", f.init_scale, "Std. dev. of the initial particles")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    s->add_option("--particles-out", flow.particles_out, "Final particle CSV");
    s->add_option("--eval-out", flow.eval_out, "Max-sliced evaluation CSV");
    actions["flow"] = [&](const Context& c) { run_flow(c, flow); };
  }

  try {
    const auto expanded = expand_config(app, args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }

  for (auto& [name, ctx] : contexts) {
    if (!ctx.sub->parsed()) continue;
    try {
      actions.at(name)(ctx);
      return kOk;
    } catch (const ConfigProblem& e) {
      err << "error: " << e.what() << '\n';
      return kBadConfig;
    } catch (const InvalidArgument& e) {
      err << "error: " << e.what() << '\n';
      return kInvalidProblem;
    } catch (const DegenerateDirection& e) {
      err << "error: " << e.what() << '\n';
      return kInvalidProblem;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kFailure;
    }
  }
  return kFailure;
}

}  // namespace maxsliced::cli
