#pragma once

// Seeded generators for the property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gen {

inline std::mt19937& rng() {
  static std::mt19937 engine(20240611u);
  return engine;
}

inline void reseed(std::uint32_t seed) { rng().seed(seed); }

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Uniform in log space on [lo, hi], lo > 0.
inline double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

inline int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

/// n sorted samples, strictly increasing after de-duplication.
inline std::vector<double> sorted_grid(double lo, double hi, std::size_t n, bool log_spaced = false) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = log_spaced ? log_uniform(lo, hi) : uniform(lo, hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

/// Increasing knots in [lo, hi] with non-decreasing values starting at >= 1.
struct Table {
  std::vector<double> knots;
  std::vector<double> values;
};

inline Table monotone_table(double lo, double hi, std::size_t n, bool increasing) {
  Table t;
  t.knots = sorted_grid(lo, hi, n);
  double v = uniform(1.0, 3.0);
  t.values.resize(t.knots.size());
  for (auto& y : t.values) {
    y = v;
    v += uniform(0.0, 2.0);
  }
  if (!increasing) std::reverse(t.values.begin(), t.values.end());
  return t;
}

}  // namespace gen
