#include "shepwm/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shepwm/dclink.hpp"
#include "shepwm/error.hpp"
#include "shepwm/harmonics.hpp"
#include "shepwm/she.hpp"
#include "text.hpp"

#ifndef SHEPWM_VERSION
#define SHEPWM_VERSION "0.0.0"
#endif

namespace shepwm::cli {

using ordered_json = nlohmann::ordered_json;
using std::numbers::pi;

const char* version() noexcept { return SHEPWM_VERSION; }

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Digits after the decimal point, or -1 when the text uses an exponent.
int decimals(std::string_view s) {
  if (s.find_first_of("eE") != std::string_view::npos) return -1;
  const std::size_t dot = s.find('.');
  return dot == std::string_view::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

}  // namespace

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (std::string_view item : detail::split(text, ',')) out.push_back(detail::parse_double(trim(item)));
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (std::string_view item : detail::split(text, ',')) {
    const long long v = detail::parse_int(trim(item));
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw Error(ErrorCode::ParseError, fmt::format("'{}' out of integer range", item));
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_grid(std::string_view text) {
  const std::vector<std::string_view> parts = detail::split(text, ':');
  if (parts.size() == 1) return parse_real_list(text);
  if (parts.size() != 3)
    throw Error(ErrorCode::ParseError, fmt::format("grid '{}' is not start:stop:step", text));

  const double start = detail::parse_double(trim(parts[0]));
  const double stop = detail::parse_double(trim(parts[1]));
  const double step = detail::parse_double(trim(parts[2]));
  if (!(step > 0.0)) throw Error(ErrorCode::ParseError, fmt::format("grid step {} must be > 0", step));
  if (stop < start) throw Error(ErrorCode::ParseError, fmt::format("grid stop {} < start {}", stop, start));

  int digits = 0;
  for (std::string_view p : parts) {
    const int d = decimals(trim(p));
    digits = d < 0 || digits < 0 ? -1 : std::max(digits, d);
  }
  const double count = std::floor((stop - start) / step + 1e-9);
  if (count > 1e6) throw Error(ErrorCode::ParseError, fmt::format("grid '{}' too large", text));

  std::vector<double> out;
  for (long long i = 0; i <= static_cast<long long>(count); ++i) {
    double v = start + static_cast<double>(i) * step;
    if (v > stop + 1e-9) break;
    if (digits >= 0 && digits <= 15) {
      const double scale = std::pow(10.0, digits);
      v = std::round(v * scale) / scale;
    }
    out.push_back(v);
  }
  return out;
}

namespace {

// Every option of a subcommand is registered here so its resolved value can
// be written back as a canonical command line for the run manifest.
class OptionSet {
 public:
  explicit OptionSet(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& flag, T& value, const std::string& help) {
    CLI::Option* opt = app_->add_option("--" + flag, value, help)->capture_default_str();
    render_.emplace_back(flag, [&value]() -> std::optional<std::string> { return render(value); });
    return opt;
  }

  CLI::Option* flag(const std::string& flag, bool& value, const std::string& help) {
    CLI::Option* opt = app_->add_flag("--" + flag, value, help);
    render_.emplace_back(flag, [&value]() -> std::optional<std::string> {
      return value ? std::optional<std::string>("") : std::nullopt;
    });
    return opt;
  }

  std::vector<std::string> canonical_args() const {
    std::vector<std::string> args{app_->get_name()};
    for (const auto& [flag, fn] : render_) {
      const std::optional<std::string> v = fn();
      if (!v) continue;
      args.push_back("--" + flag);
      if (!v->empty()) args.push_back(*v);
    }
    return args;
  }

  ordered_json config() const {
    ordered_json j = ordered_json::object();
    for (const auto& [flag, fn] : render_) {
      const std::optional<std::string> v = fn();
      if (v) j[flag] = *v;
    }
    return j;
  }

 private:
  static std::optional<std::string> render(const std::string& v) {
    return v.empty() ? std::nullopt : std::optional<std::string>(v);
  }
  static std::optional<std::string> render(double v) { return fmt::format("{:.17g}", v); }
  template <class T>
  static std::optional<std::string> render(const T& v) {
    return fmt::format("{}", v);
  }

  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<std::optional<std::string>()>>> render_;
};

struct ProblemArgs {
  int cells = 2;
  int angles_per_cell = 3;
  double vdc = 200.0;
  std::string eliminate = "3,5,7,9,11";
  std::string signs;
  std::string weights = "100,10";
  double threshold = 1e-3;
  bool no_refine = false;
};

struct PsoArgs {
  std::uint64_t seed = 42;
  int swarm = 50;
  int iterations = 500;
  int restarts = 5;
  unsigned threads = 0;
};

struct TableArgs {
  std::string grid;
  int max_order = 49;
  double base_m = 1.0;
  bool allow_infeasible_base = false;
  std::string format = "csv";
};

struct AnalyzeArgs {
  std::string angles;
  std::string signs;
  int cells = 0;
  double vdc = 200.0;
  int max_order = 49;
  std::size_t samples = 65536;
  std::string source = "analytic";
  std::string emit_waveform;
  std::string emit_spectrum;
};

struct OutputArgs {
  std::string out;
  std::string manifest;
  bool degrees = false;
};

void add_problem(OptionSet& set, ProblemArgs& a) {
  set.add("cells", a.cells, "Series H-bridge cells s")->check(CLI::PositiveNumber);
  set.add("angles-per-cell", a.angles_per_cell, "Switching angles per cell k")->check(CLI::PositiveNumber);
  set.add("vdc", a.vdc, "Per-cell DC-link voltage in volts")->check(CLI::PositiveNumber);
  set.add("eliminate", a.eliminate, "Comma separated odd harmonic orders to eliminate");
  set.add("signs", a.signs, "Comma separated transition signs (+1/-1); default depends on s, k");
  set.add("weights", a.weights, "Cost weights A,B");
  set.add("threshold", a.threshold, "Feasibility threshold in per unit")->check(CLI::PositiveNumber);
  set.flag("no-refine", a.no_refine, "Skip the Newton polish after the swarm");
}

void add_pso(OptionSet& set, PsoArgs& a) {
  set.add("seed", a.seed, "Base RNG seed");
  set.add("swarm", a.swarm, "Particles per swarm")->check(CLI::PositiveNumber);
  set.add("iterations", a.iterations, "PSO iterations per restart")->check(CLI::PositiveNumber);
  set.add("restarts", a.restarts, "Independent PSO restarts")->check(CLI::PositiveNumber);
  set.add("threads", a.threads, "Worker threads for grid commands (0 = all cores)");
}

void add_output(OptionSet& set, OutputArgs& a, bool with_degrees) {
  set.add("out", a.out, "Output file (default stdout); a .manifest.json sidecar is written next to it");
  set.add("manifest", a.manifest, "Manifest path when writing to stdout");
  if (with_degrees) set.flag("degrees", a.degrees, "Report angles in degrees");
}

template <class T>
T with_flag(const std::string& flag, const std::function<T()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError(fmt::format("--{}: {}", flag, e.what()));
  }
}

SheProblem make_problem(const ProblemArgs& a) {
  SheProblem p;
  p.cells = a.cells;
  p.angles_per_cell = a.angles_per_cell;
  p.vdc_per_cell = a.vdc;
  p.feasibility_threshold = a.threshold;
  p.refine = !a.no_refine;
  p.eliminate_orders = with_flag<std::vector<int>>("eliminate", [&] { return parse_int_list(a.eliminate); });
  if (!a.signs.empty())
    p.sign_pattern = with_flag<std::vector<int>>("signs", [&] { return parse_int_list(a.signs); });
  const std::vector<double> w = with_flag<std::vector<double>>("weights", [&] { return parse_real_list(a.weights); });
  if (w.size() != 2) throw UsageError(fmt::format("--weights: expected A,B, got '{}'", a.weights));
  p.weight_fundamental = w[0];
  p.weight_harmonics = w[1];
  return p;
}

PsoConfig make_pso(const PsoArgs& a) {
  PsoConfig c;
  c.seed = a.seed;
  c.swarm_size = a.swarm;
  c.iterations = a.iterations;
  c.restarts = a.restarts;
  return c;
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(epoch));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError(fmt::format("cannot open '{}' for writing", path));
  f << content;
  if (!f) throw UsageError(fmt::format("failed writing '{}'", path));
}

// Writes the command output to --out (plus sidecar manifest) or `out`.
void emit(const std::string& content, const OutputArgs& o, const OptionSet& set, std::uint64_t seed,
          std::ostream& out) {
  ordered_json m;
  m["command"] = set.canonical_args().front();
  m["config"] = set.config();
  m["seed"] = seed;
  m["tool_version"] = version();
  m["timestamp"] = timestamp();
  m["argv"] = set.canonical_args();
  const std::string manifest = m.dump(2) + "\n";

  if (o.out.empty()) {
    out << content;
    if (!o.manifest.empty()) write_file(o.manifest, manifest);
  } else {
    write_file(o.out, content);
    write_file(o.manifest.empty() ? o.out + ".manifest.json" : o.manifest, manifest);
  }
}

double angle_out(double rad, bool degrees) { return degrees ? rad * 180.0 / pi : rad; }

ordered_json solution_json(const Solution& s, bool degrees, int thd_order) {
  ordered_json j;
  j["target_m"] = s.target_m;
  j["feasible"] = s.feasible;
  j["refined"] = s.refined;
  j["cost"] = s.cost;
  j["fundamental_pu"] = s.fundamental_pu;
  j["fundamental_v"] = std::abs(analytic_harmonic(s.pattern, 1));
  const HarmonicSpectrum spectrum = analytic_spectrum(s.pattern, thd_order);
  if (spectrum.magnitude(1) >= 1e-12 * spectrum.base_volts)
    j["thd_pct"] = 100.0 * thd(spectrum, thd_order);
  else
    j["thd_pct"] = nullptr;
  ordered_json residuals = ordered_json::object();
  for (const auto& [order, r] : s.residuals_pu) residuals[std::to_string(order)] = r;
  j["residuals_pu"] = residuals;
  j["angle_unit"] = degrees ? "deg" : "rad";
  std::vector<double> angles;
  for (double a : s.pattern.angles) angles.push_back(angle_out(a, degrees));
  j["angles"] = angles;
  j["signs"] = s.pattern.signs;
  j["cells"] = s.pattern.cells;
  j["vdc_per_cell"] = s.pattern.vdc_per_cell;
  ordered_json d;
  d["best_value"] = s.diagnostics.best_value;
  d["evaluations"] = s.diagnostics.evaluations;
  d["converged_iteration"] = s.diagnostics.converged_iteration;
  d["best_restart"] = s.diagnostics.best_restart;
  j["diagnostics"] = d;
  return j;
}

std::string sweep_csv(const std::vector<Solution>& sols, const SheProblem& p, bool degrees, int thd_order) {
  std::ostringstream os;
  os << "target_m,feasible,cost,fundamental_pu,thd_pct";
  for (int h : p.eliminate_orders) os << ",residual_" << h << "_pu";
  for (int i = 1; i <= p.angle_count(); ++i) os << ",theta_" << i;
  os << '\n';
  for (const Solution& s : sols) {
    const HarmonicSpectrum spectrum = analytic_spectrum(s.pattern, thd_order);
    const double t = spectrum.magnitude(1) >= 1e-12 * spectrum.base_volts
                         ? 100.0 * thd(spectrum, thd_order)
                         : std::numeric_limits<double>::infinity();
    os << fmt::format("{:.17g},{},{:.17g},{:.17g},{:.17g}", s.target_m, s.feasible ? "true" : "false",
                      s.cost, s.fundamental_pu, t);
    for (int h : p.eliminate_orders) os << fmt::format(",{:.17g}", s.residuals_pu.at(h));
    for (double a : s.pattern.angles) os << fmt::format(",{:.17g}", angle_out(a, degrees));
    os << '\n';
  }
  return os.str();
}

std::vector<double> grid_arg(const std::string& text) {
  return with_flag<std::vector<double>>("pu-grid", [&] { return parse_grid(text); });
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int replay(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError(fmt::format("cannot read manifest '{}'", path));
  std::vector<std::string> argv;
  try {
    const auto j = nlohmann::json::parse(f);
    argv = j.at("argv").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(fmt::format("manifest '{}': {}", path, e.what()));
  }
  if (argv.empty() || argv.front() == "replay") throw UsageError("manifest has no replayable command");
  return dispatch(argv, out, err);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selective harmonic elimination PWM solver for cascaded H-bridge inverters", "shepwm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  // solve
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve SHE at one per-unit fundamental; JSON to stdout");
  OptionSet solve_set(solve_cmd);
  double solve_pu = 1.0;
  ProblemArgs solve_problem;
  PsoArgs solve_pso;
  OutputArgs solve_out;
  int solve_thd_order = 49;
  solve_set.add("pu", solve_pu, "Target fundamental M = V1 / (s Vdc)")->required()->check(CLI::Range(0.0, 1.0));
  add_problem(solve_set, solve_problem);
  add_pso(solve_set, solve_pso);
  solve_set.add("max-order", solve_thd_order, "THD harmonic cutoff")->check(CLI::PositiveNumber);
  add_output(solve_set, solve_out, true);

  // sweep
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Solve SHE over a grid of per-unit targets; CSV");
  OptionSet sweep_set(sweep_cmd);
  std::string sweep_grid;
  ProblemArgs sweep_problem;
  PsoArgs sweep_pso;
  OutputArgs sweep_out;
  int sweep_thd_order = 49;
  sweep_set.add("pu-grid", sweep_grid, "start:stop:step or comma list")->required();
  add_problem(sweep_set, sweep_problem);
  add_pso(sweep_set, sweep_pso);
  sweep_set.add("max-order", sweep_thd_order, "THD harmonic cutoff")->check(CLI::PositiveNumber);
  add_output(sweep_set, sweep_out, true);

  // table / compare share their option layout
  auto add_table_cmd = [&](const std::string& name, const std::string& help, TableArgs& t,
                           ProblemArgs& pa, PsoArgs& ps, OutputArgs& o) {
    CLI::App* cmd = app.add_subcommand(name, help);
    auto set = std::make_unique<OptionSet>(cmd);
    set->add("pu-grid", t.grid, "start:stop:step or comma list")->required();
    add_problem(*set, pa);
    add_pso(*set, ps);
    set->add("max-order", t.max_order, "THD harmonic cutoff")->check(CLI::PositiveNumber);
    set->add("base-m", t.base_m, "Modulation index of the single base solve")->check(CLI::Range(0.0, 1.0));
    set->flag("allow-infeasible-base", t.allow_infeasible_base,
              "Build rows even if the base solve misses the feasibility threshold");
    if (name == "table")
      set->add("format", t.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_output(*set, o, false);
    return std::make_pair(cmd, std::move(set));
  };
  TableArgs table_args, compare_args;
  ProblemArgs table_problem, compare_problem;
  PsoArgs table_pso, compare_pso;
  OutputArgs table_out, compare_out;
  auto [table_cmd, table_set] = add_table_cmd("table", "Proposed-method lookup table (variable DC link)",
                                              table_args, table_problem, table_pso, table_out);
  auto [compare_cmd, compare_set] = add_table_cmd("compare", "Conventional vs variable-DC-link THD comparison",
                                                  compare_args, compare_problem, compare_pso, compare_out);

  // analyze
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Spectrum and THD of a given switching pattern");
  OptionSet analyze_set(analyze_cmd);
  AnalyzeArgs an;
  OutputArgs analyze_out;
  analyze_set.add("angles", an.angles, "Comma separated switching angles")->required();
  analyze_set.add("signs", an.signs, "Comma separated transition signs (default all +1)");
  analyze_set.add("cells", an.cells, "Cell count (default: highest level reached)");
  analyze_set.add("vdc", an.vdc, "Per-cell DC-link voltage in volts")->check(CLI::PositiveNumber);
  analyze_set.add("max-order", an.max_order, "Highest harmonic order / THD cutoff")->check(CLI::PositiveNumber);
  analyze_set.add("samples", an.samples, "Samples per period for waveform export and DFT");
  analyze_set.add("spectrum-source", an.source, "analytic or dft")->check(CLI::IsMember({"analytic", "dft"}));
  analyze_set.add("emit-waveform", an.emit_waveform, "Write phase_rad,voltage_v CSV");
  analyze_set.add("emit-spectrum", an.emit_spectrum, "Write order,magnitude_v,magnitude_pct_of_fundamental CSV");
  add_output(analyze_set, analyze_out, true);

  // replay
  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_path;
  replay_cmd->add_option("manifest", manifest_path, "Manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (*replay_cmd) return replay(manifest_path, out, err);

  if (*solve_cmd) {
    SheProblem p = make_problem(solve_problem);
    p.target_m = solve_pu;
    const Solution s = solve(p, make_pso(solve_pso));
    emit(solution_json(s, solve_out.degrees, solve_thd_order).dump(2) + "\n", solve_out, solve_set,
         solve_pso.seed, out);
    return kSuccess;
  }

  if (*sweep_cmd) {
    const SheProblem p = make_problem(sweep_problem);
    const std::vector<double> grid = grid_arg(sweep_grid);
    const std::vector<Solution> sols = sweep(p, grid, make_pso(sweep_pso), sweep_pso.threads);
    emit(sweep_csv(sols, p, sweep_out.degrees, sweep_thd_order), sweep_out, sweep_set, sweep_pso.seed, out);
    return kSuccess;
  }

  auto table_options = [](const TableArgs& t, const PsoArgs& ps) {
    DcLinkOptions o;
    o.base_m = t.base_m;
    o.thd_max_order = t.max_order;
    o.require_feasible_base = !t.allow_infeasible_base;
    o.threads = ps.threads;
    return o;
  };

  if (*table_cmd) {
    const std::vector<double> grid = grid_arg(table_args.grid);
    const LookupTable table = build_lookup(grid, make_pso(table_pso), make_problem(table_problem),
                                           table_options(table_args, table_pso));
    std::ostringstream os;
    if (table_args.format == "json")
      os << lookup_to_json(table);
    else
      write_lookup_csv(os, table);
    emit(os.str(), table_out, *table_set, table_pso.seed, out);
    return kSuccess;
  }

  if (*compare_cmd) {
    const std::vector<double> grid = grid_arg(compare_args.grid);
    const std::vector<ComparisonRow> rows = compare_methods(
        grid, make_pso(compare_pso), make_problem(compare_problem), table_options(compare_args, compare_pso));
    std::ostringstream os;
    write_comparison_csv(os, rows);
    emit(os.str(), compare_out, *compare_set, compare_pso.seed, out);
    return kSuccess;
  }

  if (*analyze_cmd) {
    SwitchingPattern pattern;
    pattern.angles = with_flag<std::vector<double>>("angles", [&] { return parse_real_list(an.angles); });
    if (analyze_out.degrees)
      for (double& a : pattern.angles) a = a * pi / 180.0;
    pattern.signs = an.signs.empty()
                        ? std::vector<int>(pattern.angles.size(), 1)
                        : with_flag<std::vector<int>>("signs", [&] { return parse_int_list(an.signs); });
    pattern.vdc_per_cell = an.vdc;
    if (an.cells > 0) {
      pattern.cells = an.cells;
    } else {
      int level = 0;
      int peak = 1;
      for (int s : pattern.signs) peak = std::max(peak, level += s);
      pattern.cells = peak;
    }
    with_flag<int>("angles", [&] { validate(pattern); return 0; });

    HarmonicSpectrum spectrum;
    if (an.source == "dft") {
      const WaveformSamples wf = with_flag<WaveformSamples>("samples", [&] { return synthesize(pattern, an.samples); });
      spectrum = with_flag<HarmonicSpectrum>("max-order", [&] {
        return dft_spectrum(wf, an.max_order, pattern.cells * pattern.vdc_per_cell);
      });
    } else {
      spectrum = analytic_spectrum(pattern, an.max_order);
    }
    if (!an.emit_waveform.empty()) {
      const WaveformSamples wf = with_flag<WaveformSamples>("samples", [&] { return synthesize(pattern, an.samples); });
      std::ostringstream os;
      write_waveform_csv(os, wf);
      write_file(an.emit_waveform, os.str());
    }
    if (!an.emit_spectrum.empty()) {
      std::ostringstream os;
      write_spectrum_csv(os, spectrum);
      write_file(an.emit_spectrum, os.str());
    }

    ordered_json j;
    j["source"] = an.source;
    j["max_order"] = an.max_order;
    j["fundamental_v"] = spectrum.magnitude(1);
    j["fundamental_pu"] = spectrum.magnitude(1) / (pattern.cells * pattern.vdc_per_cell);
    if (spectrum.magnitude(1) >= 1e-12 * spectrum.base_volts) {
      const double t = thd(spectrum, an.max_order);
      j["thd"] = t;
      j["thd_pct"] = 100.0 * t;
    } else {
      j["thd"] = nullptr;
      j["thd_pct"] = nullptr;
    }
    ordered_json harmonics = ordered_json::array();
    for (int n = 1; n <= an.max_order; ++n) {
      ordered_json h;
      h["order"] = n;
      h["magnitude_v"] = spectrum.magnitude(n);
      harmonics.push_back(h);
    }
    j["spectrum"] = harmonics;
    emit(j.dump(2) + "\n", analyze_out, analyze_set, 0, out);
    return kSuccess;
  }
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InfeasibleBasePoint ? kInfeasibleBase : kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace shepwm::cli
