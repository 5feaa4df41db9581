#pragma once

#include <iosfwd>
#include <numbers>
#include <utility>
#include <vector>

namespace shepwm {

inline constexpr double kQuarterPeriod = std::numbers::pi / 2.0;

/// Quarter-wave symmetric multilevel switching pattern.
///
/// On [0, pi/2] the output level at phase phi is vdc_per_cell times the sum
/// of signs[i] over all angles[i] <= phi. The second quadrant mirrors the
/// first about pi/2 and the second half-period is the negation of the first.
struct SwitchingPattern {
  std::vector<double> angles;  // radians, nondecreasing, each in [0, pi/2]
  std::vector<int> signs;      // +1 / -1 per transition
  int cells = 1;               // series H-bridge cells, 2*cells+1 levels
  double vdc_per_cell = 1.0;   // volts

  std::size_t size() const noexcept { return angles.size(); }
  bool operator==(const SwitchingPattern&) const = default;
};

/// Uniformly sampled single fundamental period.
struct WaveformSamples {
  std::vector<double> samples;
  double fundamental_hz = 50.0;
};

/// Throws shepwm::Error unless every pattern invariant holds.
const SwitchingPattern& validate(const SwitchingPattern& pattern);

/// Checks only the running-level bound 0 <= L(j) <= cells of a sign sequence.
bool signs_within_levels(const std::vector<int>& signs, int cells);

/// Piecewise-constant waveform over one period, sample i at phase 2*pi*i/N.
/// A sample that falls exactly on a transition takes the post-transition
/// level. n_samples must be a positive multiple of 4.
WaveformSamples synthesize(const SwitchingPattern& pattern, std::size_t n_samples,
                           double fundamental_hz = 50.0);

/// (angle, level) after each transition in the first quadrant.
std::vector<std::pair<double, int>> level_trajectory(const SwitchingPattern& pattern);

/// CSV with header `phase_rad,voltage_v`.
void write_waveform_csv(std::ostream& out, const WaveformSamples& waveform);

}  // namespace shepwm
