#include <cmath>
#include <numbers>

#include "doctest.h"
#include "imcflab/error.hpp"
#include "imcflab/symfunc.hpp"
#include "support.hpp"

using namespace imcflab;
using doctest::Approx;

TEST_CASE("sigma small values") {
  CHECK(sigma(0, {2, 3, 4}) == 1.0);
  CHECK(sigma(2, {1, 2, 3}) == Approx(11.0).epsilon(1e-15));
  CHECK(sigma(3, {0.5, 2.5, 3}) == Approx(testsupport::sigma_enum(3, {0.5, 2.5, 3})).epsilon(1e-15));
  CHECK(sigma(3, {0.5, 2.5, 3}) == Approx(3.75).epsilon(1e-15));
}

TEST_CASE("pnorm small values") {
  for (int k = 0; k <= 4; ++k) CHECK(pnorm(k, KappaVec::umbilic(4, 1.0)) == Approx(1.0).epsilon(1e-15));
  CHECK(pnorm(2, {0.5, 2.5, 3}) == Approx(testsupport::p_enum(2, {0.5, 2.5, 3})).epsilon(1e-14));
  CHECK(pnorm(2, {0.5, 2.5, 3}) == Approx(41.0 / 12.0).epsilon(1e-14));
  for (double c : {0.3, 1.7, 4.0})
    for (int k = 0; k <= 5; ++k) CHECK(pnorm(k, KappaVec::umbilic(5, c)) == Approx(std::pow(c, k)).epsilon(1e-13));
}

TEST_CASE("order and input errors") {
  CHECK_THROWS_AS(sigma(4, {1, 2, 3}), Error);
  CHECK_THROWS_AS(pnorm(-1, {1, 2, 3}), Error);
  CHECK_THROWS_AS(KappaVec({1.0}), Error);
  CHECK_THROWS_AS(KappaVec({1.0, NAN}), Error);
  try {
    sigma(9, {1, 2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Order);
  }
}

TEST_CASE("recursion matches subset enumeration") {
  auto g = testsupport::rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 7;
    const auto x = testsupport::uniform(g, m, -3.0, 4.0);
    const auto s = elementary_symmetric(KappaVec(x));
    for (int k = 0; k <= m; ++k) {
      const double e = testsupport::sigma_enum(k, x);
      double scale = 1.0;
      for (double xi : x) scale *= 1.0 + std::abs(xi);
      CHECK(std::abs(s[k] - e) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("permutation invariance") {
  auto g = testsupport::rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 6;
    const auto x = testsupport::log_uniform(g, m);
    const auto y = testsupport::shuffled(x, g);
    const auto px = normalized_symmetric(KappaVec(x));
    const auto py = normalized_symmetric(KappaVec(y));
    for (int k = 0; k <= m; ++k) CHECK(px[k] == Approx(py[k]).epsilon(1e-13));
    CHECK(classify(KappaVec(x)) == classify(KappaVec(y)));
  }
}

TEST_CASE("newton-maclaurin residuals") {
  const auto r = newton_maclaurin_residuals({1, 2, 3}, 2);
  CHECK(r.front() == Approx(1.0 / 3.0).epsilon(1e-14));
  for (double v : newton_maclaurin_residuals(KappaVec::umbilic(4, 2.5), 4)) CHECK(std::abs(v) < 1e-12);
  for (double v : newton_maclaurin_residuals({0.5, 2.5, 3}, 3)) CHECK(v > 0.0);
  CHECK_THROWS_AS(newton_maclaurin_residuals({3, 3, -0.1}, 3), Error);

  auto g = testsupport::rng(3);
  int tested = 0;
  while (tested < 1000) {
    const int m = 2 + tested % 6;
    const auto x = testsupport::uniform(g, m, -1.0, 4.0);
    const KappaVec kv(x);
    const int k = 1 + tested % m;
    if (!in_garding_cone(kv, k)) continue;
    ++tested;
    const auto res = newton_maclaurin_residuals(kv, k);
    const double spread = kv.max() - kv.min();
    for (double v : res) {
      CHECK(v >= -1e-12);
      if (v < 1e-12) CHECK(spread < 1e-6);
    }
  }
}

TEST_CASE("garding cone membership") {
  CHECK(in_garding_cone({1, 1, 1}, 3));
  CHECK_FALSE(in_garding_cone({-1, -1, -1}, 1));
  CHECK(in_garding_cone({3, 3, -0.1}, 2));
  CHECK_FALSE(in_garding_cone({3, 3, -0.1}, 3));
}

TEST_CASE("classification examples") {
  CHECK(classify({2, 2, 2}) == ConeClass::HConvex);
  CHECK(classify({0.5, 2.5, 3}) == ConeClass::NonnegSectional);
  CHECK(classify({1, 1, 0.5}) == ConeClass::StrictlyConvex);
  CHECK(classify({-1, -1, -1}) == ConeClass::None);
  CHECK(classify({1, 1, 1}) == ConeClass::HConvex);
  for (auto c : {ConeClass::HConvex, ConeClass::NonnegSectional, ConeClass::NonnegRicci, ConeClass::StrictlyConvex,
                 ConeClass::None})
    CHECK(cone_class_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(cone_class_from_string("Round"), Error);
}

namespace {

// direct re-statement of each class's defining inequalities
bool holds(ConeClass c, const std::vector<double>& x, double tol) {
  const int m = static_cast<int>(x.size());
  const int n = m + 1;
  double sum = 0.0, kmin = x[0], pmin = 1e300, ric = 1e300;
  for (double v : x) sum += v, kmin = std::min(kmin, v);
  for (int i = 0; i < m; ++i) {
    ric = std::min(ric, x[i] * (sum - x[i]));
    for (int j = i + 1; j < m; ++j) pmin = std::min(pmin, x[i] * x[j]);
  }
  switch (c) {
    case ConeClass::HConvex: return kmin >= 1.0 - tol;
    case ConeClass::NonnegSectional: return pmin >= 1.0 - tol;
    case ConeClass::NonnegRicci: return ric >= n - 2 - tol;
    case ConeClass::StrictlyConvex: return kmin > tol;
    case ConeClass::None: return true;
  }
  return false;
}

}  // namespace

TEST_CASE("classification chain") {
  auto g = testsupport::rng(4);
  const ConeClass all[] = {ConeClass::HConvex, ConeClass::NonnegSectional, ConeClass::NonnegRicci,
                           ConeClass::StrictlyConvex};
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + trial % 5;
    const auto x = testsupport::log_uniform(g, m);
    const ConeClass got = classify(KappaVec(x));
    for (ConeClass weaker : all) {
      if (strength(weaker) <= strength(got)) CHECK(holds(weaker, x, kConeTol));
    }
    // the next stronger class must fail
    if (got != ConeClass::HConvex) {
      bool stronger_all = true;
      for (ConeClass c : all)
        if (strength(c) == strength(got) + 1) stronger_all = holds(c, x, kConeTol);
      CHECK_FALSE(stronger_all);
    }
  }
}

TEST_CASE("unit sphere measure") {
  CHECK(unit_sphere_measure(2) == Approx(4 * std::numbers::pi).epsilon(1e-15));
  CHECK(unit_sphere_measure(3) == Approx(2 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
  CHECK(unit_sphere_measure(4) == Approx(8 * std::pow(std::numbers::pi, 2) / 3).epsilon(1e-15));
  CHECK(unit_sphere_measure(1) == Approx(2 * std::numbers::pi).epsilon(1e-15));
  CHECK(unit_sphere_measure(5) == Approx(std::pow(std::numbers::pi, 3)).epsilon(1e-15));
}
