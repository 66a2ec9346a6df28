#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "imcflab/symfunc.hpp"

namespace testsupport {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 12345); }

// entries log-uniform in [lo, hi]
inline std::vector<double> log_uniform(std::mt19937_64& g, int m, double lo = 0.2, double hi = 5.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> v(m);
  for (auto& x : v) x = std::exp(u(g));
  return v;
}

inline std::vector<double> uniform(std::mt19937_64& g, int m, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(m);
  for (auto& x : v) x = u(g);
  return v;
}

inline std::vector<double> shuffled(std::vector<double> v, std::mt19937_64& g) {
  std::shuffle(v.begin(), v.end(), g);
  return v;
}

// sigma_k by summing over all k-subsets
inline double sigma_enum(int k, const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  if (k == 0) return 1.0;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double prod = 1.0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) prod *= x[i];
    total += prod;
  }
  return total;
}

inline double choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double p_enum(int k, const std::vector<double>& x) {
  return sigma_enum(k, x) / choose(static_cast<int>(x.size()), k);
}

inline bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace testsupport
