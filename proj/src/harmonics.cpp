#include "shepwm/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <ostream>

#include "shepwm/error.hpp"

namespace shepwm {

using std::numbers::pi;

double HarmonicSpectrum::magnitude(int order) const {
  if (order < 1 || order > max_order)
    throw Error(ErrorCode::OrderExceedsSpectrum,
                fmt::format("order {} not in spectrum [1, {}]", order, max_order));
  return magnitudes[static_cast<std::size_t>(order)];
}

namespace detail {

double signed_cosine_sum(std::span<const double> angles, std::span<const int> signs, int n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i)
    sum += signs[i] * std::cos(n * angles[i]);
  return sum;
}

}  // namespace detail

double analytic_harmonic(const SwitchingPattern& pattern, int n) {
  validate(pattern);
  if (n < 1) throw Error(ErrorCode::OutOfRange, fmt::format("harmonic order {} < 1", n));
  if (n % 2 == 0) return 0.0;
  return 4.0 * pattern.vdc_per_cell / (n * pi) *
         detail::signed_cosine_sum(pattern.angles, pattern.signs, n);
}

FourierCoefficients segment_integral_coefficients(const SwitchingPattern& pattern, int n) {
  validate(pattern);
  if (n < 1) throw Error(ErrorCode::OutOfRange, fmt::format("harmonic order {} < 1", n));

  // Breakpoints of the full-period waveform with the level step applied at
  // each. Quadrant order keeps the list sorted for nondecreasing angles.
  struct Step {
    double phase;
    int delta;
  };
  const std::size_t k = pattern.size();
  std::vector<Step> steps;
  steps.reserve(4 * k);
  for (std::size_t i = 0; i < k; ++i) steps.push_back({pattern.angles[i], pattern.signs[i]});
  for (std::size_t i = k; i-- > 0;) steps.push_back({pi - pattern.angles[i], -pattern.signs[i]});
  for (std::size_t i = 0; i < k; ++i) steps.push_back({pi + pattern.angles[i], -pattern.signs[i]});
  for (std::size_t i = k; i-- > 0;) steps.push_back({2.0 * pi - pattern.angles[i], pattern.signs[i]});

  double sine = 0.0;
  double cosine = 0.0;
  int level = 0;
  double start = 0.0;
  auto integrate = [&](double end) {
    if (level != 0) {
      sine += level * (std::cos(n * start) - std::cos(n * end));
      cosine += level * (std::sin(n * end) - std::sin(n * start));
    }
  };
  for (const Step& s : steps) {
    integrate(s.phase);
    level += s.delta;
    start = s.phase;
  }
  integrate(2.0 * pi);

  const double scale = pattern.vdc_per_cell / (n * pi);
  return {sine * scale, cosine * scale};
}

double segment_integral_harmonic(const SwitchingPattern& pattern, int n) {
  return segment_integral_coefficients(pattern, n).sine;
}

HarmonicSpectrum analytic_spectrum(const SwitchingPattern& pattern, int max_order) {
  validate(pattern);
  if (max_order < 1) throw Error(ErrorCode::OutOfRange, "max_order must be >= 1");
  HarmonicSpectrum spectrum;
  spectrum.max_order = max_order;
  spectrum.base_volts = pattern.cells * pattern.vdc_per_cell;
  spectrum.magnitudes.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
  const double scale = 4.0 * pattern.vdc_per_cell / pi;
  for (int n = 1; n <= max_order; n += 2)
    spectrum.magnitudes[static_cast<std::size_t>(n)] =
        std::abs(scale / n * detail::signed_cosine_sum(pattern.angles, pattern.signs, n));
  return spectrum;
}

HarmonicSpectrum dft_spectrum(const WaveformSamples& waveform, int max_order, double base_volts) {
  const std::size_t n_samples = waveform.samples.size();
  if (max_order < 1) throw Error(ErrorCode::OutOfRange, "max_order must be >= 1");
  if (static_cast<std::size_t>(max_order) * 2 >= n_samples)
    throw Error(ErrorCode::OrderExceedsNyquist,
                fmt::format("order {} >= N/2 = {}", max_order, n_samples / 2));

  // One twiddle table indexed by (n*i mod N) keeps every phase exact.
  std::vector<double> cos_table(n_samples);
  std::vector<double> sin_table(n_samples);
  const double step = 2.0 * pi / static_cast<double>(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    cos_table[i] = std::cos(step * static_cast<double>(i));
    sin_table[i] = std::sin(step * static_cast<double>(i));
  }

  HarmonicSpectrum spectrum;
  spectrum.max_order = max_order;
  spectrum.magnitudes.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
  double peak = 0.0;
  for (double v : waveform.samples) peak = std::max(peak, std::abs(v));
  spectrum.base_volts = base_volts > 0.0 ? base_volts : peak;

  for (int n = 1; n <= max_order; ++n) {
    double re = 0.0;
    double im = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
      re += waveform.samples[i] * cos_table[idx];
      im -= waveform.samples[i] * sin_table[idx];
      idx += static_cast<std::size_t>(n);
      if (idx >= n_samples) idx -= n_samples;
    }
    spectrum.magnitudes[static_cast<std::size_t>(n)] =
        2.0 / static_cast<double>(n_samples) * std::hypot(re, im);
  }
  return spectrum;
}

double thd(const HarmonicSpectrum& spectrum, int max_order) {
  if (max_order < 1 || max_order > spectrum.max_order)
    throw Error(ErrorCode::OrderExceedsSpectrum,
                fmt::format("THD cutoff {} outside spectrum [1, {}]", max_order, spectrum.max_order));
  const double fundamental = spectrum.magnitude(1);
  if (!(fundamental >= 1e-12 * spectrum.base_volts))
    throw Error(ErrorCode::ZeroFundamental,
                fmt::format("|V1| = {} below 1e-12 of base {}", fundamental, spectrum.base_volts));
  double sum = 0.0;
  for (int n = 2; n <= max_order; ++n) {
    const double v = spectrum.magnitudes[static_cast<std::size_t>(n)];
    sum += v * v;
  }
  return std::sqrt(sum) / fundamental;
}

double pattern_thd(const SwitchingPattern& pattern, int max_order) {
  return thd(analytic_spectrum(pattern, max_order), max_order);
}

void write_spectrum_csv(std::ostream& out, const HarmonicSpectrum& spectrum) {
  const double fundamental = spectrum.max_order >= 1 ? spectrum.magnitudes[1] : 0.0;
  out << "order,magnitude_v,magnitude_pct_of_fundamental\n";
  for (int n = 1; n <= spectrum.max_order; ++n) {
    const double v = spectrum.magnitudes[static_cast<std::size_t>(n)];
    const double pct = fundamental > 0.0 ? 100.0 * v / fundamental : 0.0;
    out << fmt::format("{},{:.17g},{:.17g}\n", n, v, pct);
  }
}

}  // namespace shepwm
