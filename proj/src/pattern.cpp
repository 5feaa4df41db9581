#include "shepwm/pattern.hpp"

#include <cmath>
#include <fmt/format.h>
#include <ostream>

#include "shepwm/error.hpp"

namespace shepwm {

bool signs_within_levels(const std::vector<int>& signs, int cells) {
  int level = 0;
  for (int s : signs) {
    level += s;
    if (level < 0 || level > cells) return false;
  }
  return true;
}

const SwitchingPattern& validate(const SwitchingPattern& pattern) {
  if (pattern.angles.size() != pattern.signs.size())
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("{} angles but {} signs", pattern.angles.size(), pattern.signs.size()));
  if (pattern.angles.empty())
    throw Error(ErrorCode::ShapeMismatch, "pattern has no transitions");
  if (pattern.cells < 1)
    throw Error(ErrorCode::InvalidProblem, fmt::format("cells must be >= 1, got {}", pattern.cells));
  if (!(pattern.vdc_per_cell > 0.0) || !std::isfinite(pattern.vdc_per_cell))
    throw Error(ErrorCode::InvalidProblem,
                fmt::format("vdc_per_cell must be positive, got {}", pattern.vdc_per_cell));

  int level = 0;
  for (std::size_t i = 0; i < pattern.angles.size(); ++i) {
    const double theta = pattern.angles[i];
    if (!(theta >= 0.0 && theta <= kQuarterPeriod))
      throw Error(ErrorCode::AngleOutOfRange, fmt::format("angle {} = {} not in [0, pi/2]", i, theta));
    if (i > 0 && theta < pattern.angles[i - 1])
      throw Error(ErrorCode::AnglesUnordered,
                  fmt::format("angle {} = {} precedes angle {} = {}", i, theta, i - 1,
                              pattern.angles[i - 1]));
    const int sign = pattern.signs[i];
    if (sign != 1 && sign != -1)
      throw Error(ErrorCode::SignInvalid, fmt::format("sign {} = {}", i, sign));
    level += sign;
    if (level < 0 || level > pattern.cells)
      throw Error(ErrorCode::LevelOutOfBounds,
                  fmt::format("level {} after transition {} outside [0, {}]", level, i, pattern.cells));
  }
  return pattern;
}

namespace {

// Level in units of cells at a first-quadrant phase, post-transition convention.
int quadrant_level(const SwitchingPattern& pattern, double phase) {
  int level = 0;
  for (std::size_t i = 0; i < pattern.angles.size() && pattern.angles[i] <= phase; ++i)
    level += pattern.signs[i];
  return level;
}

}  // namespace

WaveformSamples synthesize(const SwitchingPattern& pattern, std::size_t n_samples,
                           double fundamental_hz) {
  validate(pattern);
  if (n_samples < 4 || n_samples % 4 != 0)
    throw Error(ErrorCode::InvalidSampleCount,
                fmt::format("sample count {} is not a positive multiple of 4", n_samples));

  const std::size_t half = n_samples / 2;
  const std::size_t quarter = n_samples / 4;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n_samples);

  WaveformSamples out;
  out.fundamental_hz = fundamental_hz;
  out.samples.resize(n_samples);

  // First half: quadrant one directly, quadrant two through the mirror index
  // so that v(pi - phi) == v(phi) holds bit for bit.
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t j = i <= quarter ? i : half - i;
    const double phase = static_cast<double>(j) * step;
    out.samples[i] = pattern.vdc_per_cell * quadrant_level(pattern, phase);
  }
  for (std::size_t i = 0; i < half; ++i)
    out.samples[i + half] = out.samples[i] == 0.0 ? 0.0 : -out.samples[i];
  return out;
}

std::vector<std::pair<double, int>> level_trajectory(const SwitchingPattern& pattern) {
  validate(pattern);
  std::vector<std::pair<double, int>> out;
  out.reserve(pattern.size());
  int level = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    level += pattern.signs[i];
    out.emplace_back(pattern.angles[i], level);
  }
  return out;
}

void write_waveform_csv(std::ostream& out, const WaveformSamples& waveform) {
  const double n = static_cast<double>(waveform.samples.size());
  out << "phase_rad,voltage_v\n";
  for (std::size_t i = 0; i < waveform.samples.size(); ++i)
    out << fmt::format("{:.17g},{:.17g}\n", 2.0 * std::numbers::pi * static_cast<double>(i) / n,
                       waveform.samples[i]);
}

}  // namespace shepwm
