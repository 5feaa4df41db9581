#include "shepwm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <random>

#include "shepwm/error.hpp"

namespace shepwm {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(base + 0x9E3779B97F4A7C15ULL * (index + 1));
}

void PsoConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (swarm_size < 1) fail(fmt::format("swarm_size {} < 1", swarm_size));
  if (iterations < 1) fail(fmt::format("iterations {} < 1", iterations));
  if (restarts < 1) fail(fmt::format("restarts {} < 1", restarts));
  if (!(inertia_end >= 0.0) || !(inertia_start >= inertia_end))
    fail(fmt::format("need inertia_start >= inertia_end >= 0, got {} and {}", inertia_start,
                     inertia_end));
  if (!(cognitive >= 0.0) || !(social >= 0.0))
    fail(fmt::format("coefficients must be >= 0, got {} and {}", cognitive, social));
  if (!(velocity_clamp_fraction > 0.0 && velocity_clamp_fraction <= 1.0))
    fail(fmt::format("velocity_clamp_fraction {} not in (0, 1]", velocity_clamp_fraction));
}

namespace {

// Platform-independent uniform [0, 1) from the top 53 bits.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct RunResult {
  std::vector<double> position;
  double value = std::numeric_limits<double>::infinity();
  int converged_iteration = 0;
  std::vector<double> trace;
};

RunResult run_swarm(const Objective& objective, std::span<const Bound> bounds,
                    const PsoConfig& cfg, const Repair& repair, std::uint64_t seed) {
  const std::size_t dim = bounds.size();
  const std::size_t count = static_cast<std::size_t>(cfg.swarm_size);
  Uniform uniform(seed);

  std::vector<double> vmax(dim);
  for (std::size_t d = 0; d < dim; ++d)
    vmax[d] = cfg.velocity_clamp_fraction * (bounds[d].high - bounds[d].low);

  std::vector<std::vector<double>> x(count, std::vector<double>(dim));
  std::vector<std::vector<double>> v(count, std::vector<double>(dim, 0.0));
  for (auto& p : x)
    for (std::size_t d = 0; d < dim; ++d)
      p[d] = bounds[d].low + uniform() * (bounds[d].high - bounds[d].low);
  if (repair)
    for (std::size_t i = 0; i < count; ++i) repair(x[i], v[i]);

  std::vector<std::vector<double>> pbest = x;
  std::vector<double> pbest_value(count);
  RunResult run;
  run.trace.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
  for (std::size_t i = 0; i < count; ++i) {
    pbest_value[i] = objective(x[i]);
    if (pbest_value[i] < run.value) {
      run.value = pbest_value[i];
      run.position = x[i];
    }
  }
  if (run.position.empty()) {
    run.position = x[0];
    run.value = pbest_value[0];
  }
  run.trace.push_back(run.value);

  for (int it = 1; it <= cfg.iterations; ++it) {
    const double w =
        cfg.iterations == 1
            ? cfg.inertia_start
            : cfg.inertia_start - (cfg.inertia_start - cfg.inertia_end) * (it - 1) / (cfg.iterations - 1);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = uniform();
        const double r2 = uniform();
        double vel = w * v[i][d] + cfg.cognitive * r1 * (pbest[i][d] - x[i][d]) +
                     cfg.social * r2 * (run.position[d] - x[i][d]);
        vel = std::clamp(vel, -vmax[d], vmax[d]);
        double pos = x[i][d] + vel;
        if (pos < bounds[d].low) {
          pos = bounds[d].low;
          vel = 0.0;
        } else if (pos > bounds[d].high) {
          pos = bounds[d].high;
          vel = 0.0;
        }
        x[i][d] = pos;
        v[i][d] = vel;
      }
      if (repair) repair(x[i], v[i]);
    }
    // Synchronous update: evaluate everyone, then reduce by particle index.
    for (std::size_t i = 0; i < count; ++i) {
      const double f = objective(x[i]);
      if (f < pbest_value[i]) {
        pbest_value[i] = f;
        pbest[i] = x[i];
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      if (pbest_value[i] < run.value) {
        run.value = pbest_value[i];
        run.position = pbest[i];
        run.converged_iteration = it;
      }
    }
    run.trace.push_back(run.value);
  }
  return run;
}

}  // namespace

OptimizerResult minimize(const Objective& objective, std::span<const Bound> bounds,
                         const PsoConfig& config, const Repair& repair) {
  config.validate();
  if (bounds.empty()) throw Error(ErrorCode::InvalidBounds, "no dimensions");
  for (std::size_t d = 0; d < bounds.size(); ++d) {
    if (!std::isfinite(bounds[d].low) || !std::isfinite(bounds[d].high) ||
        bounds[d].low > bounds[d].high)
      throw Error(ErrorCode::InvalidBounds,
                  fmt::format("dimension {}: [{}, {}]", d, bounds[d].low, bounds[d].high));
  }

  OptimizerResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    RunResult run = run_swarm(objective, bounds, config, repair, derive_seed(config.seed, static_cast<std::uint64_t>(r)));
    result.restart_positions.push_back(run.position);
    if (r == 0 || run.value < result.best_value) {
      result.best_value = run.value;
      result.best_position = std::move(run.position);
      result.converged_iteration = run.converged_iteration;
      result.best_restart = r;
      result.trace = std::move(run.trace);
    }
  }
  result.evaluations = static_cast<long long>(config.restarts) * config.swarm_size *
                       (static_cast<long long>(config.iterations) + 1);
  return result;
}

}  // namespace shepwm
