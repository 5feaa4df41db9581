#include "shepwm/dclink.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "parallel.hpp"
#include "shepwm/error.hpp"
#include "shepwm/harmonics.hpp"
#include "text.hpp"

namespace shepwm {

std::string_view to_string(Method method) noexcept {
  return method == Method::Conventional ? "conventional" : "proposed";
}

Method parse_method(std::string_view text) {
  if (text == "conventional") return Method::Conventional;
  if (text == "proposed") return Method::Proposed;
  throw Error(ErrorCode::ParseError, fmt::format("unknown method '{}'", text));
}

double duty_for_target(double v_pu, double base_m) {
  if (!(base_m > 0.0 && base_m <= 1.0))
    throw Error(ErrorCode::OutOfRange, fmt::format("base modulation index {} not in (0, 1]", base_m));
  if (!(v_pu >= 0.0 && v_pu <= base_m))
    throw Error(ErrorCode::OutOfRange,
                fmt::format("per-unit voltage {} not reachable from base {}", v_pu, base_m));
  return v_pu / base_m;
}

SwitchingPattern scale_pattern(const SwitchingPattern& pattern, double duty) {
  validate(pattern);
  if (!(duty >= 0.0 && duty <= 1.0))
    throw Error(ErrorCode::OutOfRange, fmt::format("duty {} not in [0, 1]", duty));
  SwitchingPattern scaled = pattern;
  scaled.vdc_per_cell = pattern.vdc_per_cell * duty;
  return scaled;
}

std::optional<double> improvement_rate(double thd_conventional, double thd_proposed) {
  if (std::abs(thd_conventional - thd_proposed) <= 1e-12 || thd_conventional == 0.0)
    return std::nullopt;
  return 100.0 * (thd_conventional - thd_proposed) / thd_conventional;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::EmptySweep, "empty per-unit grid");
  for (double v : grid)
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorCode::OutOfRange, fmt::format("per-unit voltage {} not in [0, 1]", v));
}

// THD in percent, or +inf for a vanishing fundamental.
double thd_pct_or_inf(const SwitchingPattern& pattern, int max_order) {
  const HarmonicSpectrum spectrum = analytic_spectrum(pattern, max_order);
  if (!(spectrum.magnitude(1) >= 1e-12 * spectrum.base_volts))
    return std::numeric_limits<double>::infinity();
  return 100.0 * thd(spectrum, max_order);
}

Solution solve_base(const PsoConfig& pso, const SheProblem& problem, const DcLinkOptions& options) {
  SheProblem base = problem;
  base.target_m = options.base_m;
  Solution sol = solve(base, pso);
  if (options.require_feasible_base && !sol.feasible)
    throw Error(ErrorCode::InfeasibleBasePoint,
                fmt::format("SHE solve at M = {} is infeasible (cost {})", options.base_m, sol.cost));
  return sol;
}

LookupRow conventional_row(double v_pu, const Solution& sol, int max_order) {
  LookupRow row;
  row.v_pu = v_pu;
  row.method = Method::Conventional;
  row.duty = 1.0;
  row.thd_pct = thd_pct_or_inf(sol.pattern, max_order);
  row.feasible = sol.feasible;
  row.fundamental_v = std::abs(analytic_harmonic(sol.pattern, 1));
  row.angles = sol.pattern.angles;
  return row;
}

LookupRow proposed_row(double v_pu, const Solution& base, const DcLinkOptions& options) {
  LookupRow row;
  row.v_pu = v_pu;
  row.method = Method::Proposed;
  row.duty = duty_for_target(v_pu, options.base_m);
  row.angles = base.pattern.angles;
  row.feasible = base.feasible;
  // The ideal gain block scales every harmonic by the same factor, so the THD
  // of the scaled waveform is that of the base pattern. A zero duty produces
  // no waveform at all; the base THD is reported for it.
  row.thd_pct = thd_pct_or_inf(base.pattern, options.thd_max_order);
  if (row.duty > 0.0) {
    const SwitchingPattern scaled = scale_pattern(base.pattern, row.duty);
    row.thd_pct = thd_pct_or_inf(scaled, options.thd_max_order);
    row.fundamental_v = std::abs(analytic_harmonic(scaled, 1));
  }
  return row;
}

LookupTable make_table(const SheProblem& problem, const DcLinkOptions& options) {
  LookupTable table;
  table.base_vdc_per_cell = problem.vdc_per_cell;
  table.cells = problem.cells;
  table.thd_max_order = options.thd_max_order;
  return table;
}

}  // namespace

LookupTable build_lookup(std::span<const double> v_pu_grid, const PsoConfig& pso,
                         const SheProblem& problem, const DcLinkOptions& options) {
  check_grid(v_pu_grid);
  for (double v : v_pu_grid) duty_for_target(v, options.base_m);
  const Solution base = solve_base(pso, problem, options);

  LookupTable table = make_table(problem, options);
  for (double v : v_pu_grid) table.rows.push_back(proposed_row(v, base, options));
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const LookupRow& a, const LookupRow& b) { return a.v_pu < b.v_pu; });
  return table;
}

std::vector<ComparisonRow> compare_methods(std::span<const double> v_pu_grid, const PsoConfig& pso,
                                           const SheProblem& problem, const DcLinkOptions& options) {
  check_grid(v_pu_grid);
  for (double v : v_pu_grid) duty_for_target(v, options.base_m);
  const Solution base = solve_base(pso, problem, options);

  std::vector<ComparisonRow> rows(v_pu_grid.size());
  detail::parallel_for(v_pu_grid.size(), options.threads, [&](std::size_t i) {
    const double v = v_pu_grid[i];
    ComparisonRow& row = rows[i];
    row.v_pu = v;
    row.proposed = proposed_row(v, base, options);
    if (v == options.base_m) {
      row.conventional = conventional_row(v, base, options.thd_max_order);
    } else {
      SheProblem p = problem;
      p.target_m = v;
      PsoConfig cfg = pso;
      cfg.seed = derive_seed(pso.seed, i);
      row.conventional = conventional_row(v, solve(p, cfg), options.thd_max_order);
    }
    row.improvement_pct = improvement_rate(row.conventional.thd_pct, row.proposed.thd_pct);
  });
  return rows;
}

void write_lookup_csv(std::ostream& out, const LookupTable& table) {
  std::size_t k = 0;
  for (const LookupRow& row : table.rows) k = std::max(k, row.angles.size());
  out << "v_pu,method,duty,thd_pct,feasible,fundamental_v";
  for (std::size_t i = 1; i <= k; ++i) out << ",theta_" << i;
  out << '\n';
  for (const LookupRow& row : table.rows) {
    out << fmt::format("{:.17g},{},{:.17g},{:.17g},{},{:.17g}", row.v_pu, to_string(row.method),
                       row.duty, row.thd_pct, row.feasible ? "true" : "false", row.fundamental_v);
    for (double a : row.angles) out << fmt::format(",{:.17g}", a);
    out << '\n';
  }
}

LookupTable read_lookup_csv(std::istream& in, const TableLayout& layout) {
  LookupTable table;
  table.base_vdc_per_cell = layout.base_vdc_per_cell;
  table.cells = layout.cells;
  table.thd_max_order = layout.thd_max_order;

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "missing header");
  const std::vector<std::string_view> header = detail::split(line, ',');
  static constexpr std::string_view kFixed[] = {"v_pu", "method", "duty", "thd_pct", "feasible",
                                                "fundamental_v"};
  if (header.size() < std::size(kFixed))
    throw Error(ErrorCode::ParseError, fmt::format("short header '{}'", line));
  for (std::size_t i = 0; i < std::size(kFixed); ++i)
    if (header[i] != kFixed[i])
      throw Error(ErrorCode::ParseError, fmt::format("header column {} is '{}'", i, header[i]));
  for (std::size_t i = std::size(kFixed); i < header.size(); ++i)
    if (header[i] != fmt::format("theta_{}", i - std::size(kFixed) + 1))
      throw Error(ErrorCode::ParseError, fmt::format("header column {} is '{}'", i, header[i]));

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string_view> cells = detail::split(line, ',');
    if (cells.size() != header.size())
      throw Error(ErrorCode::ParseError,
                  fmt::format("row has {} fields, header has {}", cells.size(), header.size()));
    LookupRow row;
    row.v_pu = detail::parse_double(cells[0]);
    row.method = parse_method(cells[1]);
    row.duty = detail::parse_double(cells[2]);
    row.thd_pct = detail::parse_double(cells[3]);
    if (cells[4] == "true") row.feasible = true;
    else if (cells[4] == "false") row.feasible = false;
    else throw Error(ErrorCode::ParseError, fmt::format("feasible field '{}'", cells[4]));
    row.fundamental_v = detail::parse_double(cells[5]);
    for (std::size_t i = std::size(kFixed); i < cells.size(); ++i)
      row.angles.push_back(detail::parse_double(cells[i]));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string lookup_to_json(const LookupTable& table) {
  nlohmann::ordered_json j;
  j["base_vdc_per_cell"] = table.base_vdc_per_cell;
  j["cells"] = table.cells;
  j["thd_max_order"] = table.thd_max_order;
  j["rows"] = nlohmann::ordered_json::array();
  for (const LookupRow& row : table.rows) {
    nlohmann::ordered_json r;
    r["v_pu"] = row.v_pu;
    r["method"] = to_string(row.method);
    r["duty"] = row.duty;
    r["thd_pct"] = row.thd_pct;
    r["feasible"] = row.feasible;
    r["fundamental_v"] = row.fundamental_v;
    r["angles"] = row.angles;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

LookupTable lookup_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    LookupTable table;
    table.base_vdc_per_cell = j.at("base_vdc_per_cell").get<double>();
    table.cells = j.at("cells").get<int>();
    table.thd_max_order = j.at("thd_max_order").get<int>();
    for (const auto& r : j.at("rows")) {
      LookupRow row;
      row.v_pu = r.at("v_pu").get<double>();
      row.method = parse_method(r.at("method").get<std::string>());
      row.duty = r.at("duty").get<double>();
      row.thd_pct = r.at("thd_pct").get<double>();
      row.feasible = r.at("feasible").get<bool>();
      row.fundamental_v = r.at("fundamental_v").get<double>();
      row.angles = r.at("angles").get<std::vector<double>>();
      table.rows.push_back(std::move(row));
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << "v_pu,duty,thd_conventional_pct,thd_proposed_pct,improvement_pct,"
         "conventional_feasible,proposed_feasible\n";
  for (const ComparisonRow& row : rows) {
    const std::string improvement =
        row.improvement_pct ? fmt::format("{:.17g}", *row.improvement_pct) : std::string("—");
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{},{},{}\n", row.v_pu, row.proposed.duty,
                       row.conventional.thd_pct, row.proposed.thd_pct, improvement,
                       row.conventional.feasible ? "true" : "false",
                       row.proposed.feasible ? "true" : "false");
  }
}

}  // namespace shepwm
