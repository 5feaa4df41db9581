#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "shepwm/error.hpp"
#include "shepwm/harmonics.hpp"
#include "shepwm/she.hpp"

using namespace shepwm;
using std::numbers::pi;

namespace {

PsoConfig quick_pso() {
  PsoConfig cfg;
  cfg.iterations = 150;
  cfg.restarts = 2;
  return cfg;
}

}  // namespace

TEST_CASE("cost vanishes when fundamental matches and harmonics are null") {
  // Square wave on one cell: V1/(s Vdc) = 4/pi. Nothing to eliminate.
  SheProblem p;
  p.cells = 1;
  p.angles_per_cell = 1;
  p.sign_pattern = {1};
  p.eliminate_orders = {};
  p.target_m = 1.0;
  CHECK(std::abs(cost(std::vector<double>{std::acos(pi / 4.0)}, p)) <= 1e-13);
}

TEST_CASE("cost is zero at M = 0 with every angle at pi/2") {
  SheProblem p;
  p.target_m = 0.0;
  const double c = cost(std::vector<double>(6, pi / 2), p);
  CHECK(c <= 1e-13);
}

TEST_CASE("cost matches a hand evaluation for a two-angle staircase") {
  SheProblem p;
  p.cells = 2;
  p.angles_per_cell = 1;
  p.sign_pattern = {1, 1};
  p.vdc_per_cell = 200.0;
  p.target_m = 0.8;
  p.eliminate_orders = {3};
  // 100*|0.8 - 1.0674670284| + 10*(0.0186618507/3), evaluated in 30-digit arithmetic.
  CHECK(cost(std::vector<double>{0.2, 0.8}, p) == doctest::Approx(26.8089090090341511).epsilon(1e-13));

  // Same value through the independent segment integral.
  const SwitchingPattern sp{{0.2, 0.8}, {1, 1}, 2, 200.0};
  const double v1 = std::abs(segment_integral_harmonic(sp, 1)) / 400.0;
  const double v3 = std::abs(segment_integral_harmonic(sp, 3)) / 400.0;
  CHECK(cost(std::vector<double>{0.2, 0.8}, p) == doctest::Approx(100 * std::abs(0.8 - v1) + 10 * v3 / 3).epsilon(1e-12));
}

TEST_CASE("cost is permutation invariant and nonnegative") {
  testing::Gen gen(11);
  SheProblem p;
  for (int trial = 0; trial < 300; ++trial) {
    p.target_m = gen.uniform(0.0, 1.0);
    std::vector<double> x(6);
    for (double& a : x) a = gen.uniform(0.0, pi / 2);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double c = cost(x, p);
    REQUIRE(c >= 0.0);
    REQUIRE(c == cost(sorted, p));
  }
}

TEST_CASE("problem validation") {
  SheProblem p;
  CHECK_NOTHROW(p.validate());
  p.eliminate_orders = {3, 5, 7, 9, 11, 13};
  CHECK_THROWS_AS(p.validate(), Error);
  p = SheProblem{};
  p.eliminate_orders = {3, 4};
  CHECK_THROWS_AS(p.validate(), Error);
  p.eliminate_orders = {3, 3};
  CHECK_THROWS_AS(p.validate(), Error);
  p = SheProblem{};
  p.target_m = 1.1;
  CHECK_THROWS_AS(p.validate(), Error);
  p = SheProblem{};
  p.sign_pattern = {-1, 1, 1, 1, -1, -1};
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("SignPatternInvalid"), Error);
  p.sign_pattern = {1, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(p.validate(), Error);
  p.sign_pattern = {1, 1};
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("default sign patterns") {
  CHECK(default_sign_pattern(2, 3) == std::vector<int>{1, -1, 1, 1, -1, -1});
  CHECK(staircase_sign_pattern(2, 3) == std::vector<int>{1, -1, 1, 1, -1, 1});
  CHECK(default_sign_pattern(3, 1) == std::vector<int>{1, 1, 1});
  for (int s = 1; s <= 4; ++s)
    for (int k = 1; k <= 5; ++k) CHECK(signs_within_levels(default_sign_pattern(s, k), s));
}

TEST_CASE("solve is deterministic and self-consistent") {
  SheProblem p;
  p.target_m = 0.7;
  p.sign_pattern = staircase_sign_pattern(2, 3);
  const Solution a = solve(p, quick_pso());
  const Solution b = solve(p, quick_pso());
  CHECK(a == b);
  CHECK(std::is_sorted(a.pattern.angles.begin(), a.pattern.angles.end()));
  CHECK_NOTHROW(validate(a.pattern));
  if (a.refined)
    CHECK(a.cost < a.diagnostics.best_value);
  else
    CHECK(a.cost == doctest::Approx(a.diagnostics.best_value).epsilon(1e-15));
  CHECK(a.diagnostics.restart_positions.size() == static_cast<std::size_t>(quick_pso().restarts));

  p.refine = false;
  const Solution raw = solve(p, quick_pso());
  CHECK_FALSE(raw.refined);
  CHECK(raw.cost == doctest::Approx(raw.diagnostics.best_value).epsilon(1e-15));
  CHECK(a.cost <= raw.cost);
  const double base = p.cells * p.vdc_per_cell;
  for (const auto& [order, r] : a.residuals_pu) {
    const double again = std::abs(analytic_harmonic(a.pattern, order)) / base;
    CHECK(std::abs(again - r) <= 4 * std::numeric_limits<double>::epsilon() * std::max(r, 1e-300));
  }
}

TEST_CASE("solve finds an exact solution where one exists") {
  // M = 0.7 with the staircase-notch signs has an exact solution.
  SheProblem p;
  p.target_m = 0.7;
  p.sign_pattern = staircase_sign_pattern(2, 3);
  const Solution s = solve(p, PsoConfig{});
  CHECK(s.feasible);
  const double base = p.cells * p.vdc_per_cell;
  for (int h : p.eliminate_orders)
    CHECK(std::abs(segment_integral_harmonic(s.pattern, h)) / base <= 1.1 * p.feasibility_threshold);
  CHECK(std::abs(s.fundamental_pu - 0.7) <= p.feasibility_threshold);
}

TEST_CASE("low M conventional solve is poor") {
  SheProblem p;
  p.target_m = 0.2;
  const Solution s = solve(p, PsoConfig{});
  CHECK((!s.feasible || pattern_thd(s.pattern, 49) >= 0.8));
}

TEST_CASE("sweep keeps order and derives seeds per index") {
  SheProblem p;
  const std::vector<double> ms{0.9, 0.3, 0.6};
  const PsoConfig cfg = quick_pso();
  const std::vector<Solution> parallel = sweep(p, ms, cfg, 3);
  const std::vector<Solution> serial = sweep(p, ms, cfg, 1);
  REQUIRE(parallel.size() == 3);
  CHECK(parallel == serial);
  for (std::size_t i = 0; i < ms.size(); ++i) CHECK(parallel[i].target_m == ms[i]);

  PsoConfig derived = cfg;
  derived.seed = derive_seed(cfg.seed, 0);
  SheProblem one = p;
  one.target_m = 1.0;
  const std::vector<double> single{1.0};
  CHECK(sweep(p, single, cfg)[0] == solve(one, derived));

  CHECK_THROWS_WITH_AS(sweep(p, std::vector<double>{}, cfg), doctest::Contains("EmptySweep"), Error);
}
