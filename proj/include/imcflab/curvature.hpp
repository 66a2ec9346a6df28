#pragma once

// Gauss-Bonnet curvatures L_k of a hypersurface in H^n by two independent
// routes: full contraction of the intrinsic Riemann tensor with a generalized
// Kronecker delta, and the polynomial in the normalized mean curvatures.

#include <cstddef>
#include <span>
#include <vector>

#include "imcflab/symfunc.hpp"

namespace imcflab {

/// Dense rank-4 Riemann tensor R_{ij}^{kl} in an orthonormal principal frame.
class FrameRiemann {
 public:
  explicit FrameRiemann(std::size_t m);

  std::size_t dim() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const noexcept {
    return data_[((i * m_ + j) * m_ + k) * m_ + l];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) noexcept {
    return data_[((i * m_ + j) * m_ + k) * m_ + l];
  }

 private:
  std::size_t m_;
  std::vector<double> data_;
};

/// Gauss equation in H^n: R_{ij}^{kl} = -(d_i^k d_j^l - d_i^l d_j^k) + (h_i^k h_j^l - h_i^l h_j^k)
/// with h diagonal.
FrameRiemann gauss_riemann(const KappaVec& kappa);

/// Generalized Kronecker delta det[delta_{I_a}^{J_b}].
int kronecker_delta(std::span<const int> upper, std::span<const int> lower);

/// Oracle route; restricted to m <= 6.
double lk_contraction(const FrameRiemann& riemann, int k);

/// Production route: C(m,2k) (2k)! sum_j (-1)^j C(k,j) p_{2k-2j}.
double lk_polynomial(const KappaVec& kappa, int k);

/// sum_i C(k,i) (-1)^i p_{2k-2i};  equals L_k / ((2k)! C(m,2k)).
double ltilde(const KappaVec& kappa, int k);
/// sum_i C(k,i) (-1)^i p_{2k+1-2i}.
double ntilde(const KappaVec& kappa, int k);

/// Same combinations from a precomputed p_0..p_m table (no order checks).
double ltilde_from_p(std::span<const double> p, int k) noexcept;
double ntilde_from_p(std::span<const double> p, int k) noexcept;
double lk_from_p(std::span<const double> p, int m, int k) noexcept;

}  // namespace imcflab
