#include "imcflab/keyineq.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "imcflab/curvature.hpp"
#include "imcflab/error.hpp"

namespace imcflab {

std::string_view to_string(EqualityCase e) noexcept {
  switch (e) {
    case EqualityCase::Umbilic: return "Umbilic";
    case EqualityCase::SpikedUnit: return "SpikedUnit";
    case EqualityCase::NotEquality: return "NotEquality";
  }
  return "NotEquality";
}

bool in_gamma(const KappaVec& kappa, double tol) {
  const std::size_t m = kappa.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (kappa[i] * kappa[j] < 1.0 - tol) return false;
  return true;
}

namespace {

void check_gap_order(int k, std::size_t m) {
  if (k < 0 || 2 * k + 1 > static_cast<int>(m)) {
    throw Error(ErrorKind::Order, "key inequality needs 2k+1 <= m; got k=" + std::to_string(k) +
                                      ", m=" + std::to_string(m));
  }
}

struct PermSumWalker {
  const KappaVec& kappa;
  int k;
  std::vector<int> tuple;
  std::vector<bool> used;
  double total = 0.0;

  double term() const {
    double t = kappa[tuple[0]];
    for (int a = 1; a < k; ++a) t *= kappa[tuple[2 * a - 1]] * kappa[tuple[2 * a]] - 1.0;
    const double d = kappa[tuple[2 * k - 1]] - kappa[tuple[2 * k]];
    return t * d * d;
  }

  void walk(std::size_t depth) {
    if (depth == tuple.size()) {
      total += term();
      return;
    }
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple[depth] = static_cast<int>(i);
      walk(depth + 1);
      used[i] = false;
    }
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double key_gap(const KappaVec& kappa, int k) {
  check_gap_order(k, kappa.size());
  const auto p = normalized_symmetric(kappa);
  return ntilde_from_p(p, k) - p[1] * ltilde_from_p(p, k);
}

double perm_sum(const KappaVec& kappa, int k) {
  check_gap_order(k, kappa.size());
  if (kappa.size() > 8 || k > 3) {
    throw Error(ErrorKind::Dimension, "perm_sum enumeration is limited to m <= 8, k <= 3");
  }
  PermSumWalker w{kappa, k, std::vector<int>(2 * k + 1), std::vector<bool>(kappa.size(), false)};
  w.walk(0);
  return w.total;
}

GapSample gap_sample(const KappaVec& kappa, int k) {
  const double gap = key_gap(kappa, k);
  const double ps = perm_sum(kappa, k);
  const double ratio = ps > 0.0 ? -gap / ps : std::numeric_limits<double>::quiet_NaN();
  return GapSample{kappa, k, gap, ps, ratio};
}

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL)));
}

KappaVec sample_gamma_interior(int m, std::mt19937_64& rng) {
  if (m < 2) throw Error(ErrorKind::Dimension, "need m >= 2");
  std::uniform_real_distribution<double> u(-0.6, 1.6);
  std::vector<double> x(m);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (auto& xi : x) xi = std::exp(u(rng));
    KappaVec kappa(x);
    if (in_gamma(kappa, -1e-3)) return kappa;
  }
  throw Error(ErrorKind::Sampling, "could not draw an interior point of Gamma");
}

Calibration calibrate_ratio(int m, int k, int samples, std::uint64_t seed) {
  check_gap_order(k, static_cast<std::size_t>(m));
  if (samples < 10) throw Error(ErrorKind::Sampling, "calibration needs at least 10 samples");

  std::vector<double> ratios;
  ratios.reserve(samples);
  for (int j = 0; j < samples; ++j) {
    auto rng = derived_rng(seed, static_cast<std::uint64_t>(j));
    bool ok = false;
    for (int retry = 0; retry < 1000 && !ok; ++retry) {
      const KappaVec kappa = sample_gamma_interior(m, rng);
      const GapSample s = gap_sample(kappa, k);
      if (s.perm_sum < 1e-14) continue;
      ratios.push_back(s.ratio);
      ok = true;
    }
    if (!ok) throw Error(ErrorKind::Sampling, "persistently degenerate permutation sums");
  }

  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= static_cast<double>(ratios.size() - 1);
  return Calibration{mean, std::sqrt(var) / std::abs(mean), samples};
}

EqualityCase equality_case(const KappaVec& kappa, int k, double tol) {
  check_gap_order(k, kappa.size());
  if (!in_gamma(kappa, kConeTol)) {
    throw Error(ErrorKind::ConeViolation, "equality_case needs kappa in Gamma");
  }
  if (kappa.max() - kappa.min() < tol) return EqualityCase::Umbilic;
  if (k >= 2) {
    int spiked = 0;
    bool rest_unit = true;
    for (double x : kappa.values()) {
      if (x > 1.0 + tol) {
        ++spiked;
      } else if (std::abs(x - 1.0) > tol) {
        rest_unit = false;
      }
    }
    if (spiked == 1 && rest_unit) return EqualityCase::SpikedUnit;
  }
  return EqualityCase::NotEquality;
}

std::optional<KappaVec> find_positive_gap_witness(int m, int k, std::uint64_t seed, int max_tries) {
  check_gap_order(k, static_cast<std::size_t>(m));
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  std::vector<double> x(m);
  for (int t = 0; t < max_tries; ++t) {
    auto rng = derived_rng(seed, static_cast<std::uint64_t>(t));
    for (auto& xi : x) xi = u(rng);
    KappaVec kappa(x);
    if (in_gamma(kappa)) continue;
    if (key_gap(kappa, k) > 1e-6) return kappa;
  }
  return std::nullopt;
}

}  // namespace imcflab
