#include <doctest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "shepwm/error.hpp"
#include "shepwm/harmonics.hpp"
#include "shepwm/she.hpp"

using namespace shepwm;
using std::numbers::pi;

namespace {

SwitchingPattern square_wave(double vdc = 200.0) { return SwitchingPattern{{0.0}, {1}, 1, vdc}; }

SwitchingPattern notched_degrees() {
  std::vector<double> angles;
  for (double deg : {5.0, 15.0, 25.0, 35.0, 45.0, 55.0}) angles.push_back(deg * pi / 180.0);
  return SwitchingPattern{angles, notched_sign_pattern(), 2, 200.0};
}

bool close_rel(double a, double b, double rel, double floor) {
  return std::abs(a - b) <= rel * std::max(std::abs(b), floor);
}

}  // namespace

TEST_CASE("square wave fundamental") {
  CHECK(analytic_harmonic(square_wave(), 1) == doctest::Approx(4.0 * 200.0 / pi).epsilon(1e-15));
  CHECK(analytic_harmonic(square_wave(), 1) == doctest::Approx(254.6479089).epsilon(1e-9));
  CHECK(segment_integral_harmonic(square_wave(), 1) == doctest::Approx(4.0 * 200.0 / pi).epsilon(1e-14));
}

TEST_CASE("even harmonics vanish") {
  CHECK(analytic_harmonic(notched_degrees(), 2) == 0.0);
  CHECK(std::abs(segment_integral_harmonic(square_wave(), 2)) <= 1e-12 * 200.0);
}

TEST_CASE("notched pattern third harmonic agrees with the segment integral") {
  const SwitchingPattern p = notched_degrees();
  CHECK(close_rel(analytic_harmonic(p, 3), segment_integral_harmonic(p, 3), 1e-10, 0.0));
}

TEST_CASE("analytic vs segment integration on random patterns") {
  testing::Gen gen(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const SwitchingPattern p = gen.pattern();
    for (int n = 1; n <= 49; ++n) {
      const double a = analytic_harmonic(p, n);
      const FourierCoefficients c = segment_integral_coefficients(p, n);
      REQUIRE(std::abs(c.cosine) <= 1e-9 * p.vdc_per_cell);
      if (n % 2 == 0) {
        REQUIRE(a == 0.0);
        REQUIRE(std::abs(c.sine) <= 1e-9 * p.vdc_per_cell);
      } else {
        REQUIRE(close_rel(a, c.sine, 1e-10, p.vdc_per_cell));
      }
    }
  }
}

TEST_CASE("harmonics scale linearly with the DC voltage") {
  testing::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    SwitchingPattern p = gen.pattern();
    const double alpha = gen.uniform(0.01, 10.0);
    SwitchingPattern scaled = p;
    scaled.vdc_per_cell *= alpha;
    for (int n = 1; n <= 25; n += 2) {
      const double expected = alpha * analytic_harmonic(p, n);
      const double got = analytic_harmonic(scaled, n);
      REQUIRE(std::abs(got - expected) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(expected));
    }
    const double t1 = pattern_thd(p, 49);
    const double t2 = pattern_thd(scaled, 49);
    REQUIRE(std::abs(t1 - t2) <= 1e-12);
  }
}

TEST_CASE("DFT of a pure sine") {
  const std::size_t n = 1024;
  WaveformSamples wf;
  for (std::size_t i = 0; i < n; ++i) wf.samples.push_back(3.5 * std::sin(2.0 * pi * i / n));
  const HarmonicSpectrum s = dft_spectrum(wf, 20);
  CHECK(s.magnitude(1) == doctest::Approx(3.5).epsilon(1e-12));
  for (int k = 2; k <= 20; ++k) CHECK(s.magnitude(k) <= 1e-10 * 3.5);
}

TEST_CASE("DFT of a sampled square wave") {
  const WaveformSamples wf = synthesize(square_wave(), 1 << 16);
  const HarmonicSpectrum s = dft_spectrum(wf, 3);
  CHECK(close_rel(s.magnitude(1), 4.0 * 200.0 / pi, 1e-3, 0.0));
}

TEST_CASE("DFT agrees with the analytic spectrum on the notched pattern") {
  const SwitchingPattern p = notched_degrees();
  const HarmonicSpectrum d = dft_spectrum(synthesize(p, 1 << 16), 49);
  for (int n = 1; n <= 49; ++n) {
    const double a = std::abs(analytic_harmonic(p, n));
    if (a > 1e-3 * p.vdc_per_cell) CHECK(close_rel(d.magnitude(n), a, 1e-2, 0.0));
  }
}

TEST_CASE("DFT rejects orders at or above Nyquist") {
  const WaveformSamples wf = synthesize(square_wave(), 64);
  CHECK_NOTHROW(dft_spectrum(wf, 31));
  CHECK_THROWS_AS(dft_spectrum(wf, 32), Error);
}

TEST_CASE("THD of a pure fundamental is zero") {
  HarmonicSpectrum s;
  s.max_order = 9;
  s.magnitudes.assign(10, 0.0);
  s.magnitudes[1] = 5.0;
  CHECK(thd(s, 9) == 0.0);
}

TEST_CASE("THD of the square wave truncated at 49") {
  // sqrt(pi^2/8 - 1 - sum_{odd n>=51} 1/n^2), tail evaluated separately to 30 digits.
  CHECK(pattern_thd(square_wave(), 49) == doctest::Approx(0.472971333934630858894).epsilon(1e-12));
}

TEST_CASE("THD of the square wave approaches the infinite-series limit") {
  const double limit = std::sqrt(pi * pi / 8.0 - 1.0);
  CHECK(std::abs(pattern_thd(square_wave(), 100001) - limit) <= 1e-3);
  CHECK(limit == doctest::Approx(0.4834).epsilon(1e-4));
}

TEST_CASE("THD error paths") {
  const SwitchingPattern zero{{pi / 2}, {1}, 1, 200.0};
  CHECK_THROWS_WITH_AS(pattern_thd(zero, 49), doctest::Contains("ZeroFundamental"), Error);
  const HarmonicSpectrum s = analytic_spectrum(square_wave(), 9);
  CHECK_THROWS_AS(thd(s, 11), Error);
}

TEST_CASE("spectrum csv") {
  std::ostringstream os;
  write_spectrum_csv(os, analytic_spectrum(square_wave(), 3));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "order,magnitude_v,magnitude_pct_of_fundamental");
  std::getline(is, line);
  CHECK(line.rfind("1,254.6479", 0) == 0);
  CHECK(line.substr(line.rfind(',') + 1) == "100");
  std::getline(is, line);
  CHECK(line == "2,0,0");
  std::getline(is, line);
  CHECK(line.rfind("3,84.88", 0) == 0);
}
