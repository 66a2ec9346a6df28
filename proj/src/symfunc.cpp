#include "imcflab/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "imcflab/error.hpp"

namespace imcflab {

KappaVec::KappaVec(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorKind::Dimension,
                "KappaVec needs at least 2 principal curvatures, got " + std::to_string(values_.size()));
  }
  for (double x : values_) {
    if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "non-finite principal curvature");
  }
}

KappaVec KappaVec::umbilic(std::size_t m, double c) { return KappaVec(std::vector<double>(m, c)); }

double KappaVec::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double KappaVec::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

std::string_view to_string(ConeClass c) noexcept {
  switch (c) {
    case ConeClass::HConvex: return "HConvex";
    case ConeClass::NonnegSectional: return "NonnegSectional";
    case ConeClass::NonnegRicci: return "NonnegRicci";
    case ConeClass::StrictlyConvex: return "StrictlyConvex";
    case ConeClass::None: return "None";
  }
  return "None";
}

ConeClass cone_class_from_string(std::string_view name) {
  for (ConeClass c : {ConeClass::HConvex, ConeClass::NonnegSectional, ConeClass::NonnegRicci,
                      ConeClass::StrictlyConvex, ConeClass::None}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::Parse, "unknown convexity class '" + std::string(name) + "'");
}

int strength(ConeClass c) noexcept {
  switch (c) {
    case ConeClass::HConvex: return 4;
    case ConeClass::NonnegSectional: return 3;
    case ConeClass::NonnegRicci: return 2;
    case ConeClass::StrictlyConvex: return 1;
    case ConeClass::None: return 0;
  }
  return 0;
}

double binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

double factorial(int n) noexcept {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<double> elementary_symmetric(const KappaVec& kappa) {
  const std::size_t m = kappa.size();
  std::vector<double> e(m + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j >= 1; --j) e[j] += kappa[i] * e[j - 1];
  }
  return e;
}

std::vector<double> normalized_symmetric(const KappaVec& kappa) {
  auto p = elementary_symmetric(kappa);
  const int m = static_cast<int>(kappa.size());
  for (int j = 0; j <= m; ++j) p[j] /= binomial(m, j);
  return p;
}

namespace {

void check_order(int k, const KappaVec& kappa, int lo) {
  const int m = static_cast<int>(kappa.size());
  if (k < lo || k > m) {
    throw Error(ErrorKind::Order, "order " + std::to_string(k) + " outside [" + std::to_string(lo) +
                                      ", " + std::to_string(m) + "]");
  }
}

}  // namespace

double sigma(int k, const KappaVec& kappa) {
  check_order(k, kappa, 0);
  return elementary_symmetric(kappa)[k];
}

double pnorm(int k, const KappaVec& kappa) {
  check_order(k, kappa, 0);
  return normalized_symmetric(kappa)[k];
}

bool in_garding_cone(const KappaVec& kappa, int k) {
  check_order(k, kappa, 1);
  const auto e = elementary_symmetric(kappa);
  for (int j = 1; j <= k; ++j) {
    if (!(e[j] > 0.0)) return false;
  }
  return true;
}

std::vector<double> newton_maclaurin_residuals(const KappaVec& kappa, int k) {
  if (!in_garding_cone(kappa, k)) {
    throw Error(ErrorKind::ConeViolation,
                "Newton-MacLaurin inequalities need kappa in Gamma_" + std::to_string(k) + "^+");
  }
  const auto p = normalized_symmetric(kappa);
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(k));
  for (int j = 2; j <= k; ++j) out.push_back(p[1] * p[j - 1] - p[j]);
  for (int j = 1; j < k; ++j) {
    out.push_back(std::pow(p[j], 1.0 / j) - std::pow(p[j + 1], 1.0 / (j + 1)));
  }
  return out;
}

ConeClass classify(const KappaVec& kappa, double tol) {
  const std::size_t m = kappa.size();
  const double n = static_cast<double>(m) + 1.0;
  const double kmin = kappa.min();

  double min_pair = kappa[0] * kappa[1];
  double min_ricci = 0.0;
  double total = 0.0;
  for (double x : kappa.values()) total += x;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) min_pair = std::min(min_pair, kappa[i] * kappa[j]);
    const double ric = kappa[i] * (total - kappa[i]);
    min_ricci = (i == 0) ? ric : std::min(min_ricci, ric);
  }

  const bool convex = kmin > tol;
  const bool ricci = convex && min_ricci >= (n - 2.0) - tol;
  const bool sectional = ricci && min_pair >= 1.0 - tol;
  const bool hconvex = sectional && kmin >= 1.0 - tol;

  if (hconvex) return ConeClass::HConvex;
  if (sectional) return ConeClass::NonnegSectional;
  if (ricci) return ConeClass::NonnegRicci;
  if (convex) return ConeClass::StrictlyConvex;
  return ConeClass::None;
}

double unit_sphere_measure(int m) {
  if (m < 1) throw Error(ErrorKind::Dimension, "sphere dimension must be >= 1");
  // Gamma((m+1)/2): integer argument j -> (j-1)!, half-integer j + 1/2 -> (2j)! sqrt(pi) / (4^j j!)
  const double pi = std::numbers::pi;
  double gamma;
  if ((m + 1) % 2 == 0) {
    gamma = factorial((m + 1) / 2 - 1);
  } else {
    const int j = m / 2;
    gamma = std::sqrt(pi);
    for (int i = 1; i <= j; ++i) gamma *= (i - 0.5);
  }
  return 2.0 * std::pow(pi, 0.5 * (m + 1)) / gamma;
}

}  // namespace imcflab
