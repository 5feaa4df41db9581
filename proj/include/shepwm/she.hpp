#pragma once

#include <map>
#include <span>
#include <vector>

#include "shepwm/optimizer.hpp"
#include "shepwm/pattern.hpp"

namespace shepwm {

/// Prefix-sum sign sequence used by the classic five-level, six-angle
/// pattern: +1 -1 +1 +1 -1 -1 (notched, returns to level 0 at pi/2).
std::vector<int> notched_sign_pattern();

/// Every cell contributes `angles_per_cell` alternating transitions starting
/// with +1, so odd angles_per_cell climbs one level per cell.
std::vector<int> staircase_sign_pattern(int cells, int angles_per_cell);

/// Default for a given structure: the notched pattern for cells=2, k=3,
/// otherwise staircase_sign_pattern.
std::vector<int> default_sign_pattern(int cells, int angles_per_cell);

/// SHE problem definition. M is the fundamental normalized by the total
/// DC-link voltage, M = V1 / (cells * vdc_per_cell).
struct SheProblem {
  double target_m = 1.0;
  std::vector<int> eliminate_orders{3, 5, 7, 9, 11};
  int cells = 2;
  int angles_per_cell = 3;
  std::vector<int> sign_pattern;  // empty selects default_sign_pattern
  double weight_fundamental = 100.0;
  double weight_harmonics = 10.0;
  double vdc_per_cell = 200.0;
  double feasibility_threshold = 1e-3;  // pu, per eliminated order and on the fundamental
  bool refine = true;  // damped Newton polish of the swarm result, kept only if the cost drops

  int angle_count() const noexcept { return cells * angles_per_cell; }
  std::vector<int> resolved_signs() const;

  /// Throws Error(InvalidProblem | SignPatternInvalid).
  void validate() const;
  bool operator==(const SheProblem&) const = default;
};

struct Solution {
  SwitchingPattern pattern;
  double target_m = 0.0;
  double cost = 0.0;
  double fundamental_pu = 0.0;
  std::map<int, double> residuals_pu;
  bool feasible = false;
  bool refined = false;  // the polish step replaced the swarm result
  OptimizerResult diagnostics;

  bool operator==(const Solution&) const = default;
};

/// Weighted SHE objective on raw optimizer coordinates. Angles are clamped
/// to [0, pi/2] and sorted before evaluation, so the value is invariant
/// under permutation of `angles`.
///   A * |M - |V1|/(s Vdc)| + B * sum_h (1/h) * |Vh|/(s Vdc)
double cost(std::span<const double> angles, const SheProblem& problem);

/// Builds the solution record for a fixed angle vector (sorted internally).
Solution evaluate(std::span<const double> angles, const SheProblem& problem);

/// Runs PSO over [0, pi/2]^K and returns the repaired best point, optionally
/// polished by a Levenberg-Marquardt pass on the signed residuals.
Solution solve(const SheProblem& problem, const PsoConfig& pso);

/// One solve per target M. Point i uses seed derive_seed(pso.seed, i).
/// Points are solved on up to `threads` workers (0 = hardware concurrency);
/// the result order always follows `m_values`.
std::vector<Solution> sweep(const SheProblem& problem, std::span<const double> m_values,
                            const PsoConfig& pso, unsigned threads = 0);

}  // namespace shepwm
