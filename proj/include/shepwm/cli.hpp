#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace shepwm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInfeasibleBase = 1,
  kUsage = 2,
  kInternal = 3,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `start:stop:step` (stop included within 1e-9) or a comma separated list.
/// Grid points are rounded to the decimal precision of the inputs so that
/// 0.1:1.0:0.1 yields exactly 0.1, 0.2, ..., 1.0.
std::vector<double> parse_grid(std::string_view text);

std::vector<double> parse_real_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

const char* version() noexcept;

}  // namespace shepwm::cli
