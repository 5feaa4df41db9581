#include "shepwm/she.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>

#include "parallel.hpp"
#include "shepwm/error.hpp"
#include "shepwm/harmonics.hpp"

namespace shepwm {

using std::numbers::pi;

std::vector<int> notched_sign_pattern() { return {+1, -1, +1, +1, -1, -1}; }

std::vector<int> staircase_sign_pattern(int cells, int angles_per_cell) {
  std::vector<int> signs;
  signs.reserve(static_cast<std::size_t>(std::max(0, cells * angles_per_cell)));
  for (int c = 0; c < cells; ++c)
    for (int j = 0; j < angles_per_cell; ++j) signs.push_back(j % 2 == 0 ? +1 : -1);
  return signs;
}

std::vector<int> default_sign_pattern(int cells, int angles_per_cell) {
  if (cells == 2 && angles_per_cell == 3) return notched_sign_pattern();
  return staircase_sign_pattern(cells, angles_per_cell);
}

std::vector<int> SheProblem::resolved_signs() const {
  return sign_pattern.empty() ? default_sign_pattern(cells, angles_per_cell) : sign_pattern;
}

void SheProblem::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidProblem, what); };
  if (!(target_m >= 0.0 && target_m <= 1.0)) fail(fmt::format("target_m {} not in [0, 1]", target_m));
  if (cells < 1) fail(fmt::format("cells {} < 1", cells));
  if (angles_per_cell < 1) fail(fmt::format("angles_per_cell {} < 1", angles_per_cell));
  if (!(vdc_per_cell > 0.0) || !std::isfinite(vdc_per_cell))
    fail(fmt::format("vdc_per_cell {} must be positive", vdc_per_cell));
  if (!(weight_fundamental >= 0.0) || !(weight_harmonics >= 0.0))
    fail(fmt::format("weights must be >= 0, got {} and {}", weight_fundamental, weight_harmonics));
  if (!(feasibility_threshold > 0.0)) fail("feasibility_threshold must be positive");

  const int k = angle_count();
  if (static_cast<int>(eliminate_orders.size()) > k - 1)
    fail(fmt::format("{} eliminated orders need more than {} angles", eliminate_orders.size(), k));
  std::set<int> seen;
  for (int h : eliminate_orders) {
    if (h <= 1 || h % 2 == 0) fail(fmt::format("eliminated order {} must be odd and > 1", h));
    if (!seen.insert(h).second) fail(fmt::format("eliminated order {} repeated", h));
  }

  const std::vector<int> signs = resolved_signs();
  if (static_cast<int>(signs.size()) != k)
    throw Error(ErrorCode::SignPatternInvalid,
                fmt::format("{} signs for {} angles", signs.size(), k));
  for (int s : signs)
    if (s != 1 && s != -1) throw Error(ErrorCode::SignPatternInvalid, fmt::format("sign {}", s));
  if (!signs_within_levels(signs, cells))
    throw Error(ErrorCode::SignPatternInvalid, "running level leaves [0, cells]");
}

namespace {

std::vector<double> repair(std::span<const double> angles) {
  std::vector<double> out(angles.begin(), angles.end());
  for (double& a : out) a = std::clamp(a, 0.0, kQuarterPeriod);
  std::sort(out.begin(), out.end());
  return out;
}

// |Vn| / (s * Vdc) for odd n; the DC voltage cancels.
double harmonic_pu(std::span<const double> angles, std::span<const int> signs, int cells, int n) {
  return std::abs(4.0 / (n * pi * cells) * detail::signed_cosine_sum(angles, signs, n));
}

double cost_sorted(std::span<const double> sorted, std::span<const int> signs,
                   const SheProblem& problem) {
  double f = problem.weight_fundamental *
             std::abs(problem.target_m - harmonic_pu(sorted, signs, problem.cells, 1));
  double harmonics = 0.0;
  for (int h : problem.eliminate_orders)
    harmonics += harmonic_pu(sorted, signs, problem.cells, h) / h;
  return f + problem.weight_harmonics * harmonics;
}

// Signed residuals (V1/(s Vdc) - M, Vh/(s Vdc)...) and their Jacobian.
void residuals(std::span<const double> t, std::span<const int> signs, const SheProblem& problem,
               std::vector<double>& r, std::vector<double>& jac) {
  const std::size_t k = t.size();
  const std::size_t rows = problem.eliminate_orders.size() + 1;
  r.assign(rows, 0.0);
  jac.assign(rows * k, 0.0);
  for (std::size_t row = 0; row < rows; ++row) {
    const int n = row == 0 ? 1 : problem.eliminate_orders[row - 1];
    const double scale = 4.0 / (n * pi * problem.cells);
    for (std::size_t i = 0; i < k; ++i) {
      r[row] += scale * signs[i] * std::cos(n * t[i]);
      jac[row * k + i] = -scale * n * signs[i] * std::sin(n * t[i]);
    }
  }
  r[0] -= problem.target_m;
}

// Solves (J^T J + lambda I) step = -J^T r by Gaussian elimination with
// partial pivoting. Returns false if the system is singular.
bool lm_step(const std::vector<double>& r, const std::vector<double>& jac, std::size_t k,
             double lambda, std::vector<double>& step) {
  const std::size_t rows = r.size();
  std::vector<double> a(k * (k + 1), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t row = 0; row < rows; ++row) s += jac[row * k + i] * jac[row * k + j];
      a[i * (k + 1) + j] = s;
    }
    a[i * (k + 1) + i] *= 1.0 + lambda;
    a[i * (k + 1) + i] += 1e-12;
    double g = 0.0;
    for (std::size_t row = 0; row < rows; ++row) g += jac[row * k + i] * r[row];
    a[i * (k + 1) + k] = -g;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < k; ++i)
      if (std::abs(a[i * (k + 1) + c]) > std::abs(a[piv * (k + 1) + c])) piv = i;
    if (!(std::abs(a[piv * (k + 1) + c]) > 0.0)) return false;
    if (piv != c)
      for (std::size_t j = 0; j <= k; ++j) std::swap(a[c * (k + 1) + j], a[piv * (k + 1) + j]);
    for (std::size_t i = c + 1; i < k; ++i) {
      const double f = a[i * (k + 1) + c] / a[c * (k + 1) + c];
      for (std::size_t j = c; j <= k; ++j) a[i * (k + 1) + j] -= f * a[c * (k + 1) + j];
    }
  }
  step.assign(k, 0.0);
  for (std::size_t c = k; c-- > 0;) {
    double s = a[c * (k + 1) + k];
    for (std::size_t j = c + 1; j < k; ++j) s -= a[c * (k + 1) + j] * step[j];
    step[c] = s / a[c * (k + 1) + c];
  }
  return true;
}

double sum_squares(const std::vector<double>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

// Levenberg-Marquardt on the residual vector, staying inside [0, pi/2] and
// in ascending order. Deterministic; no random draws.
std::vector<double> polish(std::vector<double> t, std::span<const int> signs, const SheProblem& problem) {
  const std::size_t k = t.size();
  std::vector<double> r, jac, step, trial_r, trial_jac;
  residuals(t, signs, problem, r, jac);
  double ss = sum_squares(r);
  double lambda = 1e-3;
  for (int iter = 0; iter < 200 && ss > 1e-30; ++iter) {
    if (!lm_step(r, jac, k, lambda, step)) break;
    std::vector<double> trial(k);
    for (std::size_t i = 0; i < k; ++i) trial[i] = t[i] + step[i];
    trial = repair(trial);
    residuals(trial, signs, problem, trial_r, trial_jac);
    const double trial_ss = sum_squares(trial_r);
    if (trial_ss < ss) {
      t = std::move(trial);
      r.swap(trial_r);
      jac.swap(trial_jac);
      ss = trial_ss;
      lambda = std::max(lambda * 0.3, 1e-12);
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  return t;
}

}  // namespace

double cost(std::span<const double> angles, const SheProblem& problem) {
  const std::vector<int> signs = problem.resolved_signs();
  if (angles.size() != signs.size())
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("{} angles for a {}-angle problem", angles.size(), signs.size()));
  return cost_sorted(repair(angles), signs, problem);
}

Solution evaluate(std::span<const double> angles, const SheProblem& problem) {
  problem.validate();
  Solution sol;
  sol.target_m = problem.target_m;
  sol.pattern.angles = repair(angles);
  sol.pattern.signs = problem.resolved_signs();
  sol.pattern.cells = problem.cells;
  sol.pattern.vdc_per_cell = problem.vdc_per_cell;
  if (sol.pattern.angles.size() != sol.pattern.signs.size())
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("{} angles for a {}-angle problem", angles.size(), sol.pattern.signs.size()));
  validate(sol.pattern);

  const double base = problem.cells * problem.vdc_per_cell;
  sol.cost = cost_sorted(sol.pattern.angles, sol.pattern.signs, problem);
  sol.fundamental_pu = std::abs(analytic_harmonic(sol.pattern, 1)) / base;
  sol.feasible = std::abs(sol.fundamental_pu - problem.target_m) <= problem.feasibility_threshold;
  for (int h : problem.eliminate_orders) {
    const double r = std::abs(analytic_harmonic(sol.pattern, h)) / base;
    sol.residuals_pu[h] = r;
    if (!(r <= problem.feasibility_threshold)) sol.feasible = false;
  }
  return sol;
}

Solution solve(const SheProblem& problem, const PsoConfig& pso) {
  problem.validate();
  const std::vector<int> signs = problem.resolved_signs();
  const std::vector<Bound> box(signs.size(), Bound{0.0, kQuarterPeriod});
  auto objective = [&](std::span<const double> x) {
    return cost_sorted(repair(x), signs, problem);
  };
  // Keep every particle in the ordered region so that the swarm does not mix
  // coordinates from permuted copies of the same solution.
  auto sort_particle = [](std::span<double> x, std::span<double> v) {
    for (std::size_t i = 1; i < x.size(); ++i)
      for (std::size_t j = i; j > 0 && x[j] < x[j - 1]; --j) {
        std::swap(x[j], x[j - 1]);
        std::swap(v[j], v[j - 1]);
      }
  };
  OptimizerResult result = minimize(objective, box, pso, sort_particle);
  Solution sol = evaluate(result.best_position, problem);
  if (problem.refine) {
    // Polish each restart's best; the lowest cost wins, ties to the earlier restart.
    for (const std::vector<double>& start : result.restart_positions) {
      Solution polished = evaluate(polish(repair(start), signs, problem), problem);
      if (polished.cost < sol.cost) {
        sol = std::move(polished);
        sol.refined = true;
      }
    }
  }
  sol.diagnostics = std::move(result);
  return sol;
}

std::vector<Solution> sweep(const SheProblem& problem, std::span<const double> m_values,
                            const PsoConfig& pso, unsigned threads) {
  if (m_values.empty()) throw Error(ErrorCode::EmptySweep, "no modulation indices given");
  pso.validate();
  for (double m : m_values) {
    SheProblem p = problem;
    p.target_m = m;
    p.validate();
  }
  std::vector<Solution> out(m_values.size());
  detail::parallel_for(m_values.size(), threads, [&](std::size_t i) {
    SheProblem p = problem;
    p.target_m = m_values[i];
    PsoConfig cfg = pso;
    cfg.seed = derive_seed(pso.seed, i);
    out[i] = solve(p, cfg);
  });
  return out;
}

}  // namespace shepwm
