#include <cmath>
#include <vector>

#include "doctest.h"
#include "imcflab/curvature.hpp"
#include "imcflab/error.hpp"
#include "imcflab/keyineq.hpp"
#include "support.hpp"

using namespace imcflab;
using doctest::Approx;

namespace {

double perm_sum_k1(const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  double s = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        if (a == b || b == c || a == c) continue;
        s += x[a] * (x[b] - x[c]) * (x[b] - x[c]);
      }
  return s;
}

double perm_sum_k2(const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  double s = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          for (int e = 0; e < m; ++e) {
            const int idx[] = {a, b, c, d, e};
            bool distinct = true;
            for (int i = 0; i < 5; ++i)
              for (int j = i + 1; j < 5; ++j) distinct = distinct && idx[i] != idx[j];
            if (!distinct) continue;
            s += x[a] * (x[b] * x[c] - 1.0) * (x[d] - x[e]) * (x[d] - x[e]);
          }
  return s;
}

// N~_k - p_1 L~_k straight from enumerated p_j
double gap_oracle(const std::vector<double>& x, int k) {
  double lt = 0.0, nt = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double sgn = (i % 2) ? -1.0 : 1.0;
    lt += testsupport::choose(k, i) * sgn * testsupport::p_enum(2 * k - 2 * i, x);
    nt += testsupport::choose(k, i) * sgn * testsupport::p_enum(2 * k + 1 - 2 * i, x);
  }
  return nt - testsupport::p_enum(1, x) * lt;
}

}  // namespace

TEST_CASE("gamma membership") {
  CHECK(in_gamma({1, 1, 1}));
  CHECK(in_gamma({0.5, 2.5, 3}));
  CHECK_FALSE(in_gamma({0.5, 1.5, 3}));
}

TEST_CASE("key gap examples") {
  CHECK(key_gap({0.5, 2.5, 3}, 1) == Approx(-37.0 / 12.0).epsilon(1e-13));
  CHECK(key_gap({0.5, 2.5, 3}, 1) == Approx(gap_oracle({0.5, 2.5, 3}, 1)).epsilon(1e-13));
  for (double c : {1.0, 1.5, 2.0})
    for (int k = 1; 2 * k + 1 <= 6; ++k) CHECK(std::abs(key_gap(KappaVec::umbilic(6, c), k)) <= 1e-12);
  CHECK(std::abs(key_gap({3, 1, 1, 1, 1}, 2)) <= 1e-12);
  CHECK_THROWS_AS(key_gap({1, 2, 3}, 2), Error);
}

TEST_CASE("perm sum against nested loops") {
  CHECK(perm_sum({0.5, 2.5, 3}, 1) == Approx(55.5).epsilon(1e-14));
  CHECK(perm_sum(KappaVec::umbilic(5, 1.7), 2) == 0.0);
  CHECK(perm_sum({3, 1, 1, 1, 1}, 2) == 0.0);
  auto g = testsupport::rng(20);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 3 + trial % 4;
    const auto x = testsupport::uniform(g, m, -1.0, 3.0);
    CHECK(perm_sum(KappaVec(x), 1) == Approx(perm_sum_k1(x)).epsilon(1e-12));
    if (m >= 5) CHECK(perm_sum(KappaVec(x), 2) == Approx(perm_sum_k2(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(perm_sum(KappaVec::umbilic(9, 1.0), 1), Error);
}

TEST_CASE("gap sign and perm sum sign on gamma") {
  const int mk[][2] = {{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 2}};
  for (const auto& p : mk) {
    for (int i = 0; i < 400; ++i) {
      auto rng = derived_rng(7, static_cast<std::uint64_t>(i));
      const KappaVec x = sample_gamma_interior(p[0], rng);
      CHECK(in_gamma(x));
      const GapSample s = gap_sample(x, p[1]);
      CHECK(s.gap <= 1e-12);
      CHECK(s.perm_sum >= -1e-12);
    }
  }
}

TEST_CASE("calibration constant is constant and matches the oracle") {
  const int mk[][2] = {{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 2}};
  for (const auto& p : mk) {
    const Calibration c = calibrate_ratio(p[0], p[1], 200, 42);
    CHECK(c.dispersion <= 1e-8);
    auto rng = testsupport::rng(static_cast<std::uint64_t>(p[0] * 10 + p[1]));
    std::vector<double> x;
    do x = testsupport::log_uniform(rng, p[0], 0.6, 4.0);
    while (!in_gamma(KappaVec(x), -1e-3));
    const double ps = p[1] == 1 ? perm_sum_k1(x) : perm_sum_k2(x);
    CHECK(-gap_oracle(x, p[1]) / ps == Approx(c.constant).epsilon(1e-9));
  }
  // same seed, same answer
  CHECK(calibrate_ratio(4, 1, 50, 9).constant == calibrate_ratio(4, 1, 50, 9).constant);
  CHECK_THROWS_AS(calibrate_ratio(4, 1, 5, 9), Error);
}

TEST_CASE("ratio is permutation invariant") {
  auto g = testsupport::rng(21);
  auto rng = derived_rng(3, 0);
  const KappaVec x = sample_gamma_interior(5, rng);
  std::vector<double> v(x.values().begin(), x.values().end());
  const double r0 = gap_sample(x, 2).ratio;
  for (int i = 0; i < 10; ++i) CHECK(gap_sample(KappaVec(testsupport::shuffled(v, g)), 2).ratio == Approx(r0).epsilon(1e-12));
}

TEST_CASE("equality cases") {
  CHECK(equality_case({2, 2, 2, 2, 2}, 2) == EqualityCase::Umbilic);
  CHECK(equality_case({3, 1, 1, 1, 1}, 2) == EqualityCase::SpikedUnit);
  CHECK(equality_case({3, 1, 1, 1, 1}, 1) == EqualityCase::NotEquality);
  CHECK(key_gap({3, 1, 1, 1, 1}, 1) < 0.0);
  CHECK_THROWS_AS(equality_case({0.5, 1.5, 3}, 1), Error);

  // designed suite: the classification agrees with |gap| < 1e-10
  const std::vector<std::pair<std::vector<double>, int>> suite = {
      {{1.3, 1.3, 1.3, 1.3, 1.3}, 1}, {{1.3, 1.3, 1.3, 1.3, 1.3}, 2}, {{2.5, 1, 1, 1, 1}, 2},
      {{1, 1, 1, 1, 4, 1}, 2},         {{2.5, 1, 1, 1, 1}, 1},         {{1.2, 1.5, 2, 2.5, 3}, 2},
      {{1, 1, 1, 1, 1, 1}, 2},         {{2, 2, 1, 1, 1}, 2},           {{0.9, 1.2, 1.4, 1.6, 2}, 1},
  };
  for (const auto& [x, k] : suite) {
    const KappaVec kv(x);
    const bool eq = equality_case(kv, k) != EqualityCase::NotEquality;
    CHECK(eq == (std::abs(key_gap(kv, k)) < 1e-10));
  }
}

TEST_CASE("outside gamma the gap can be positive") {
  const auto w = find_positive_gap_witness(3, 1, 42);
  REQUIRE(w.has_value());
  CHECK_FALSE(in_gamma(*w));
  CHECK(key_gap(*w, 1) > 0.0);
  const auto w2 = find_positive_gap_witness(5, 2, 42);
  REQUIRE(w2.has_value());
  CHECK(key_gap(*w2, 2) > 0.0);
  // regression fixture: deterministic in the seed
  CHECK(find_positive_gap_witness(3, 1, 42)->values()[0] == w->values()[0]);
}
