#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace shepwm {

struct Bound {
  double low = 0.0;
  double high = 1.0;
};

/// Global-best particle swarm settings. Defaults are tuned for the SHE cost
/// over [0, pi/2]^6.
struct PsoConfig {
  int swarm_size = 50;
  int iterations = 500;
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double cognitive = 2.0;
  double social = 2.0;
  double velocity_clamp_fraction = 0.2;
  int restarts = 5;
  std::uint64_t seed = 42;

  /// Throws Error(InvalidConfig) on any out-of-range field.
  void validate() const;
  bool operator==(const PsoConfig&) const = default;
};

struct OptimizerResult {
  std::vector<double> best_position;
  double best_value = 0.0;
  long long evaluations = 0;
  int converged_iteration = 0;  // last iteration that improved gbest in the winning restart
  int best_restart = 0;
  std::vector<double> trace;    // gbest value after init and after each iteration, winning restart
  std::vector<std::vector<double>> restart_positions;  // gbest of every restart, in order

  bool operator==(const OptimizerResult&) const = default;
};

using Objective = std::function<double(std::span<const double>)>;

/// Optional in-place projection applied to every particle after its move,
/// given the position and the matching velocity. It must keep the position
/// inside the box.
using Repair = std::function<void(std::span<double> position, std::span<double> velocity)>;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `index` derived from `base`:
/// splitmix64(base + 0x9E3779B97F4A7C15 * (index + 1)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Minimizes `objective` over the box `bounds` with global-best PSO.
///
/// Each restart r draws from its own generator seeded with
/// derive_seed(config.seed, r); the best restart wins, ties going to the
/// lower index. Positions start uniform in the box with zero velocity. A
/// particle that leaves the box is clamped back and its velocity in that
/// dimension is zeroed. All iterations always run.
OptimizerResult minimize(const Objective& objective, std::span<const Bound> bounds,
                         const PsoConfig& config, const Repair& repair = {});

}  // namespace shepwm
