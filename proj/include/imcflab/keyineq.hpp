#pragma once

// The key pointwise inequality behind Q_k monotonicity:
//   N~_k - p_1 L~_k <= 0   on   Gamma = { kappa : kappa_i kappa_j >= 1, i != j },
// its permutation-sum witness, and the equality strata.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "imcflab/symfunc.hpp"

namespace imcflab {

struct GapSample {
  KappaVec kappa;
  int k;
  double gap;       // N~_k - p_1 L~_k
  double perm_sum;  // value of the permutation sum
  double ratio;     // -gap / perm_sum when perm_sum > 0, else NaN
};

struct Calibration {
  double constant;    // mean of (p_1 L~_k - N~_k) / perm_sum
  double dispersion;  // relative standard deviation of the ratios
  int samples;
};

enum class EqualityCase { Umbilic, SpikedUnit, NotEquality };
std::string_view to_string(EqualityCase e) noexcept;

bool in_gamma(const KappaVec& kappa, double tol = 0.0);

double key_gap(const KappaVec& kappa, int k);

/// Direct enumeration over injective (2k+1)-tuples; m <= 8, k <= 3.
double perm_sum(const KappaVec& kappa, int k);

GapSample gap_sample(const KappaVec& kappa, int k);

/// kappa_i = exp(u_i), u_i ~ U[-0.6, 1.6], rejected until min pairwise product >= 1 + 1e-3.
KappaVec sample_gamma_interior(int m, std::mt19937_64& rng);

/// Per-sample generator: deterministic in (seed, index) only.
std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t index);

Calibration calibrate_ratio(int m, int k, int samples, std::uint64_t seed);

EqualityCase equality_case(const KappaVec& kappa, int k, double tol = 1e-8);

/// Seeded search outside Gamma for a point with key_gap > 0.
std::optional<KappaVec> find_positive_gap_witness(int m, int k, std::uint64_t seed,
                                                  int max_tries = 100000);

}  // namespace imcflab
