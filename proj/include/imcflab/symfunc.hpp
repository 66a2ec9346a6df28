#pragma once

// Elementary / normalized symmetric functions of principal curvatures,
// Garding cones and the four convexity classes of hypersurfaces in H^n.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace imcflab {

/// Principal curvatures (kappa_1, ..., kappa_m), m = n - 1 >= 2. Unordered.
class KappaVec {
 public:
  explicit KappaVec(std::vector<double> values);
  KappaVec(std::initializer_list<double> values) : KappaVec(std::vector<double>(values)) {}

  /// Umbilic vector (c, ..., c) of length m.
  static KappaVec umbilic(std::size_t m, double c);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  double min() const noexcept;
  double max() const noexcept;

 private:
  std::vector<double> values_;
};

/// Strongest first. HConvex => NonnegSectional => NonnegRicci => StrictlyConvex.
enum class ConeClass { HConvex, NonnegSectional, NonnegRicci, StrictlyConvex, None };

std::string_view to_string(ConeClass c) noexcept;
ConeClass cone_class_from_string(std::string_view name);

/// Rank with None = 0 and HConvex = 4, so "weaker" compares lower.
int strength(ConeClass c) noexcept;

/// Default absolute slack for cone membership tests on flow data.
inline constexpr double kConeTol = 1e-9;

/// Binomial coefficient C(n, k) as a double (0 outside 0 <= k <= n).
double binomial(int n, int k) noexcept;
double factorial(int n) noexcept;

/// sigma_0 .. sigma_m by the generating polynomial prod_i (1 + kappa_i x).
std::vector<double> elementary_symmetric(const KappaVec& kappa);

/// p_0 .. p_m with p_j = sigma_j / C(m, j).
std::vector<double> normalized_symmetric(const KappaVec& kappa);

double sigma(int k, const KappaVec& kappa);
double pnorm(int k, const KappaVec& kappa);

/// p_1 p_{j-1} - p_j for j = 2..k, followed by p_j^{1/j} - p_{j+1}^{1/(j+1)}
/// for j = 1..k-1. Throws ConeViolation unless kappa lies in Gamma_k^+.
std::vector<double> newton_maclaurin_residuals(const KappaVec& kappa, int k);

/// sigma_j(kappa) > 0 for every j <= k.
bool in_garding_cone(const KappaVec& kappa, int k);

/// Strongest class whose inequalities (and those of every weaker class) hold
/// with slack >= -tol. Uses n = m + 1 for the Ricci threshold n - 2.
ConeClass classify(const KappaVec& kappa, double tol = kConeTol);

/// Total measure of the unit m-sphere, 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double unit_sphere_measure(int m);

}  // namespace imcflab
