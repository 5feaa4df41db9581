#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shepwm/optimizer.hpp"
#include "shepwm/pattern.hpp"
#include "shepwm/she.hpp"

namespace shepwm {

enum class Method { Conventional, Proposed };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);

struct LookupRow {
  double v_pu = 0.0;
  Method method = Method::Proposed;
  double duty = 1.0;
  double thd_pct = 0.0;
  bool feasible = false;
  double fundamental_v = 0.0;
  std::vector<double> angles;

  bool operator==(const LookupRow&) const = default;
};

struct LookupTable {
  std::vector<LookupRow> rows;
  double base_vdc_per_cell = 200.0;
  int cells = 2;
  int thd_max_order = 49;

  bool operator==(const LookupTable&) const = default;
};

struct ComparisonRow {
  double v_pu = 0.0;
  LookupRow conventional;
  LookupRow proposed;
  std::optional<double> improvement_pct;  // empty when both THD values coincide
};

struct DcLinkOptions {
  double base_m = 1.0;        // operating point of the single SHE solve
  int thd_max_order = 49;
  bool require_feasible_base = true;
  unsigned threads = 0;       // 0 = hardware concurrency
};

/// Duty cycle of the DC-DC stage for a commanded per-unit output when the
/// inverter runs at modulation index base_m: D = v_pu / base_m.
double duty_for_target(double v_pu, double base_m = 1.0);

/// Same angles and signs, per-cell DC voltage multiplied by duty.
SwitchingPattern scale_pattern(const SwitchingPattern& pattern, double duty);

/// Solves once at base_m and derives one proposed-method row per grid value
/// by scaling the DC link. The base solve uses `pso` unchanged.
LookupTable build_lookup(std::span<const double> v_pu_grid, const PsoConfig& pso,
                         const SheProblem& problem, const DcLinkOptions& options = {});

/// Conventional rows solve SHE directly at M = v_pu with nominal DC (grid
/// point i uses derive_seed(pso.seed, i); a point equal to base_m reuses the
/// base solve). Proposed rows come from build_lookup.
std::vector<ComparisonRow> compare_methods(std::span<const double> v_pu_grid, const PsoConfig& pso,
                                           const SheProblem& problem,
                                           const DcLinkOptions& options = {});

/// (conv - prop) / conv in percent, or empty when the two are equal.
std::optional<double> improvement_rate(double thd_conventional, double thd_proposed);

struct TableLayout {
  double base_vdc_per_cell = 200.0;
  int cells = 2;
  int thd_max_order = 49;
};

/// Header `v_pu,method,duty,thd_pct,feasible,fundamental_v,theta_1..theta_K`,
/// every real printed with 17 significant digits.
void write_lookup_csv(std::ostream& out, const LookupTable& table);
LookupTable read_lookup_csv(std::istream& in, const TableLayout& layout);

std::string lookup_to_json(const LookupTable& table);
LookupTable lookup_from_json(std::string_view text);

/// Header `v_pu,duty,thd_conventional_pct,thd_proposed_pct,improvement_pct,
/// conventional_feasible,proposed_feasible`; undefined improvement is "—".
void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);

}  // namespace shepwm
