#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "shepwm/pattern.hpp"

namespace shepwm {

/// Harmonic magnitudes indexed by order; index 0 is unused and kept at 0.
struct HarmonicSpectrum {
  std::vector<double> magnitudes;
  int max_order = 0;
  double base_volts = 1.0;  // cells * vdc_per_cell

  double magnitude(int order) const;
};

/// Sine and cosine Fourier coefficients of one harmonic order.
struct FourierCoefficients {
  double sine = 0.0;
  double cosine = 0.0;
};

namespace detail {
// sum_i signs[i] * cos(n * angles[i]); no validation
double signed_cosine_sum(std::span<const double> angles, std::span<const int> signs, int n);
}  // namespace detail

/// Signed amplitude of harmonic n from the closed form
/// 4*Vdc/(n*pi) * sum_i sign_i * cos(n*theta_i). Even orders are exactly 0.
double analytic_harmonic(const SwitchingPattern& pattern, int n);

/// Fourier coefficients obtained by integrating every constant segment of the
/// full-period waveform exactly. Uses no symmetry shortcuts, so it serves as
/// an independent check of analytic_harmonic.
FourierCoefficients segment_integral_coefficients(const SwitchingPattern& pattern, int n);

/// Sine coefficient from segment_integral_coefficients.
double segment_integral_harmonic(const SwitchingPattern& pattern, int n);

/// |analytic_harmonic| for orders 1..max_order.
HarmonicSpectrum analytic_spectrum(const SwitchingPattern& pattern, int max_order);

/// Single-sided DFT magnitudes |(2/N) sum v[i] e^{-j 2 pi n i / N}| for
/// n = 1..max_order. base_volts defaults to the peak absolute sample.
HarmonicSpectrum dft_spectrum(const WaveformSamples& waveform, int max_order,
                              double base_volts = 0.0);

/// sqrt(sum_{n=2}^{max_order} V_n^2) / |V_1| as a ratio.
double thd(const HarmonicSpectrum& spectrum, int max_order);

/// Convenience: THD of the analytic spectrum up to max_order.
double pattern_thd(const SwitchingPattern& pattern, int max_order);

/// CSV with header `order,magnitude_v,magnitude_pct_of_fundamental`.
void write_spectrum_csv(std::ostream& out, const HarmonicSpectrum& spectrum);

}  // namespace shepwm
