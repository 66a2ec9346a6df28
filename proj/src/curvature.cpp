#include "imcflab/curvature.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "imcflab/error.hpp"

namespace imcflab {

FrameRiemann::FrameRiemann(std::size_t m) : m_(m), data_(m * m * m * m, 0.0) {}

FrameRiemann gauss_riemann(const KappaVec& kappa) {
  const std::size_t m = kappa.size();
  FrameRiemann R(m);
  auto delta = [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          const double metric = delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k);
          const double second = kappa[i] * kappa[j] * metric;  // h diagonal
          R(i, j, k, l) = second - metric;
        }
  return R;
}

int kronecker_delta(std::span<const int> upper, std::span<const int> lower) {
  if (upper.size() != lower.size()) {
    throw Error(ErrorKind::Index, "generalized Kronecker delta needs index lists of equal length");
  }
  const std::size_t r = upper.size();
  // Integer Gaussian elimination with fraction-free (Bareiss) pivoting; entries are 0/1.
  std::vector<long long> a(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i * r + j] = (upper[i] == lower[j]) ? 1 : 0;
  long long sign = 1;
  long long prev = 1;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t piv = k;
    while (piv < r && a[piv * r + k] == 0) ++piv;
    if (piv == r) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < r; ++j) std::swap(a[k * r + j], a[piv * r + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < r; ++j) {
        a[i * r + j] = (a[i * r + j] * a[k * r + k] - a[i * r + k] * a[k * r + j]) / prev;
      }
      a[i * r + k] = 0;
    }
    prev = a[k * r + k];
  }
  return static_cast<int>(sign * (r == 0 ? 1 : a[(r - 1) * r + (r - 1)]));
}

namespace {

void check_lk_order(int k, std::size_t m) {
  if (k < 0 || 2 * k > static_cast<int>(m)) {
    throw Error(ErrorKind::Order, "L_k needs 0 <= 2k <= m; got k=" + std::to_string(k) +
                                      ", m=" + std::to_string(m));
  }
}

// (-1)^{inversions}; sign of a tuple of distinct values relative to its sorted order.
int inversion_sign(const std::vector<int>& v) noexcept {
  int inv = 0;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) inv += v[a] > v[b];
  return (inv % 2) ? -1 : 1;
}

}  // namespace

double lk_contraction(const FrameRiemann& R, int k) {
  const std::size_t m = R.dim();
  check_lk_order(k, m);
  if (m > 6) throw Error(ErrorKind::Dimension, "lk_contraction is an oracle limited to m <= 6");
  if (k == 0) return 1.0;

  const std::size_t r = 2 * static_cast<std::size_t>(k);
  double total = 0.0;
  // Upper indices: ordered r-tuples of distinct frame indices (the delta vanishes otherwise);
  // lower indices: permutations of the upper tuple, weighted by their sign.
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
  do {
    std::vector<int> subset;
    for (std::size_t a = 0; a < m; ++a)
      if (mask[a]) subset.push_back(static_cast<int>(a));
    std::vector<int> upper = subset;
    std::vector<int> lower(r);
    do {
      const int upper_sign = inversion_sign(upper);
      std::copy(subset.begin(), subset.end(), lower.begin());
      do {
        double term = 1.0;
        for (std::size_t a = 0; a < r && term != 0.0; a += 2) {
          term *= R(upper[a], upper[a + 1], lower[a], lower[a + 1]);
        }
        if (term != 0.0) total += upper_sign * inversion_sign(lower) * term;
      } while (std::next_permutation(lower.begin(), lower.end()));
    } while (std::next_permutation(upper.begin(), upper.end()));
  } while (std::prev_permutation(mask.begin(), mask.end()));

  return total / static_cast<double>(1ULL << k);
}

double ltilde_from_p(std::span<const double> p, int k) noexcept {
  double s = 0.0;
  for (int i = 0; i <= k; ++i) s += binomial(k, i) * ((i % 2) ? -1.0 : 1.0) * p[2 * k - 2 * i];
  return s;
}

double ntilde_from_p(std::span<const double> p, int k) noexcept {
  double s = 0.0;
  for (int i = 0; i <= k; ++i) s += binomial(k, i) * ((i % 2) ? -1.0 : 1.0) * p[2 * k + 1 - 2 * i];
  return s;
}

double lk_from_p(std::span<const double> p, int m, int k) noexcept {
  return binomial(m, 2 * k) * factorial(2 * k) * ltilde_from_p(p, k);
}

double lk_polynomial(const KappaVec& kappa, int k) {
  check_lk_order(k, kappa.size());
  const auto p = normalized_symmetric(kappa);
  return lk_from_p(p, static_cast<int>(kappa.size()), k);
}

double ltilde(const KappaVec& kappa, int k) {
  check_lk_order(k, kappa.size());
  return ltilde_from_p(normalized_symmetric(kappa), k);
}

double ntilde(const KappaVec& kappa, int k) {
  if (k < 0 || 2 * k + 1 > static_cast<int>(kappa.size())) {
    throw Error(ErrorKind::Order, "ntilde needs 2k+1 <= m; got k=" + std::to_string(k));
  }
  return ntilde_from_p(normalized_symmetric(kappa), k);
}

}  // namespace imcflab
