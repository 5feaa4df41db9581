#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "shepwm/pattern.hpp"

namespace shepwm::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(integer(0, static_cast<int>(xs.size()) - 1))];
  }

  // Random sign sequence whose running level stays within [0, cells].
  std::vector<int> signs(std::size_t k, int cells) {
    std::vector<int> out;
    int level = 0;
    for (std::size_t i = 0; i < k; ++i) {
      int s;
      if (level == 0) s = 1;
      else if (level == cells) s = -1;
      else s = integer(0, 1) ? 1 : -1;
      level += s;
      out.push_back(s);
    }
    return out;
  }

  std::vector<double> ascending_angles(std::size_t k) {
    std::vector<double> out(k);
    for (double& a : out) a = uniform(0.0, kQuarterPeriod);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Valid pattern with K drawn from `sizes`.
  SwitchingPattern pattern(const std::vector<int>& sizes = {1, 2, 4, 6}) {
    SwitchingPattern p;
    const auto k = static_cast<std::size_t>(pick(sizes));
    p.cells = integer(1, 3);
    p.angles = ascending_angles(k);
    p.signs = signs(k, p.cells);
    p.vdc_per_cell = uniform(10.0, 500.0);
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace shepwm::testing
