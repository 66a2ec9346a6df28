#include "imcflab/geometry.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "imcflab/curvature.hpp"
#include "imcflab/error.hpp"
#include "imcflab/keyineq.hpp"

namespace imcflab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int n) {
  if (n < 3) throw Error(ErrorKind::Dimension, "ambient dimension n must be >= 3");
}

}  // namespace

RotSymGraph::RotSymGraph(int n, std::vector<double> r) : n_(n), r_(std::move(r)) {
  check_dimension(n);
  const int N = intervals();
  if (N < 4 || N % 2 != 0) {
    throw Error(ErrorKind::Discretization,
                "graph needs an even number N >= 4 of theta intervals, got " + std::to_string(N));
  }
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!std::isfinite(r_[i]) || r_[i] <= 0.0) {
      throw Error(ErrorKind::Domain, "radial value at node " + std::to_string(i) + " must be finite and > 0");
    }
  }
}

double RotSymGraph::spacing() const noexcept { return kPi / intervals(); }

double RotSymGraph::theta(std::size_t i) const noexcept {
  return static_cast<int>(i) == intervals() ? kPi : static_cast<double>(i) * spacing();
}

RotSymGraph constant_graph(int n, int N, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Domain, "sphere radius must be > 0");
  return RotSymGraph(n, std::vector<double>(static_cast<std::size_t>(N) + 1, radius));
}

RotSymGraph legendre_graph(int n, int N, double r0, double eps, int ell) {
  if (N < 4) throw Error(ErrorKind::Discretization, "need N >= 4");
  if (ell < 0) throw Error(ErrorKind::Domain, "Legendre degree must be >= 0");
  std::vector<double> r(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) {
    const double th = (i == N) ? kPi : i * kPi / N;
    r[i] = r0 + eps * std::legendre(static_cast<unsigned>(ell), std::cos(th));
  }
  return RotSymGraph(n, std::move(r));
}

RotSymGraph perturbed_graph(int n, int N, std::uint64_t seed, ConeClass target, PerturbedSpec* spec_out) {
  auto rng = derived_rng(seed, 0x5eed);
  std::uniform_real_distribution<double> r0_dist(0.6, 1.4);
  std::uniform_real_distribution<double> amp_dist(0.04, 0.25);
  std::bernoulli_distribution ell_dist(0.5);
  std::bernoulli_distribution sign_dist(0.5);
  const double r0 = r0_dist(rng);
  const int ell = ell_dist(rng) ? 3 : 2;
  double eps = amp_dist(rng) * r0 * (sign_dist(rng) ? 1.0 : -1.0);

  for (int halvings = 0; halvings < 40; ++halvings, eps *= 0.5) {
    if (std::abs(eps) >= r0) continue;
    RotSymGraph g = legendre_graph(n, N, r0, eps, ell);
    const SurfaceData S = surface_data_graph(g);
    // a small negative tolerance keeps the start strictly inside the class
    if (strength(surface_class(S, -1e-6)) >= strength(target)) {
      if (spec_out) *spec_out = PerturbedSpec{r0, eps, ell};
      return g;
    }
  }
  throw Error(ErrorKind::Sampling, "no perturbation amplitude satisfies the requested class");
}

KappaVec SurfaceData::kappa(std::size_t i) const {
  std::vector<double> k(static_cast<std::size_t>(n - 1), kappa_par[i]);
  k[0] = kappa_merid[i];
  return KappaVec(std::move(k));
}

SurfaceData surface_data_sphere(int n, double radius, int N) {
  check_dimension(n);
  if (!(radius > 0.0)) throw Error(ErrorKind::Domain, "sphere radius must be > 0");
  return surface_data_graph(constant_graph(n, N, radius));
}

SurfaceData surface_data_graph(const RotSymGraph& graph) {
  const int n = graph.n();
  const int N = graph.intervals();
  const double h = graph.spacing();
  const auto r = graph.r();
  const double omega = unit_sphere_measure(n - 2);

  // even reflection across both poles
  auto at = [&](int i) {
    if (i < 0) i = -i;
    if (i > N) i = 2 * N - i;
    return r[static_cast<std::size_t>(i)];
  };

  SurfaceData S;
  S.n = n;
  S.dtheta = h;
  const std::size_t nodes = graph.nodes();
  for (auto* vec : {&S.theta, &S.r, &S.lambda, &S.dlambda, &S.v, &S.kappa_merid, &S.kappa_par, &S.weight}) {
    vec->resize(nodes);
  }

  for (int i = 0; i <= N; ++i) {
    const double rm2 = at(i - 2), rm1 = at(i - 1), r0 = at(i), rp1 = at(i + 1), rp2 = at(i + 2);
    const double r1 = (-rp2 + 8.0 * rp1 - 8.0 * rm1 + rm2) / (12.0 * h);
    const double r2 = (-rp2 + 16.0 * rp1 - 30.0 * r0 + 16.0 * rm1 - rm2) / (12.0 * h * h);

    const double lam = std::sinh(r0);
    const double dlam = std::cosh(r0);
    // derivatives of phi = Phi(r) with Phi' = 1/lambda
    const double phi1 = r1 / lam;
    const double phi2 = r2 / lam - dlam * r1 * r1 / (lam * lam);
    const double v = std::sqrt(1.0 + phi1 * phi1);

    const double km = (dlam * v * v - phi2) / (lam * v * v * v);
    double kp = km;  // removable singularity at the poles
    const double th = graph.theta(static_cast<std::size_t>(i));
    if (i != 0 && i != N) kp = (dlam - phi1 * std::cos(th) / std::sin(th)) / (lam * v);

    const double s = (i == 0 || i == N) ? 0.0 : std::sin(th);
    const double w = omega * std::pow(lam, n - 1) * v * std::pow(s, n - 2);

    if (!std::isfinite(km) || !std::isfinite(kp) || !std::isfinite(w)) {
      throw Error(ErrorKind::Discretization, "non-finite curvature at node " + std::to_string(i));
    }
    const auto k = static_cast<std::size_t>(i);
    S.theta[k] = th;
    S.r[k] = r0;
    S.lambda[k] = lam;
    S.dlambda[k] = dlam;
    S.v[k] = v;
    S.kappa_merid[k] = km;
    S.kappa_par[k] = kp;
    S.weight[k] = w;
  }
  return S;
}

std::vector<double> simpson_weights(std::size_t nodes, double h) {
  if (nodes < 3 || nodes % 2 == 0) {
    throw Error(ErrorKind::Discretization, "Simpson's rule needs an odd number of nodes >= 3");
  }
  std::vector<double> w(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double c = (i == 0 || i + 1 == nodes) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    w[i] = c * h / 3.0;
  }
  return w;
}

double surface_integral(const SurfaceData& S, std::span<const double> values) {
  const auto w = simpson_weights(S.nodes(), S.dtheta);
  double sum = 0.0;
  for (std::size_t i = 0; i < S.nodes(); ++i) sum += w[i] * S.weight[i] * values[i];
  return sum;
}

double area(const SurfaceData& S) {
  const std::vector<double> ones(S.nodes(), 1.0);
  return surface_integral(S, ones);
}

std::vector<double> curvature_integrals(const SurfaceData& S) {
  const int m = S.m();
  std::vector<std::vector<double>> p(static_cast<std::size_t>(m) + 1, std::vector<double>(S.nodes()));
  for (std::size_t i = 0; i < S.nodes(); ++i) {
    const auto pi = normalized_symmetric(S.kappa(i));
    for (int j = 0; j <= m; ++j) p[j][i] = pi[j];
  }
  std::vector<double> out(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) out[j] = surface_integral(S, p[j]);
  return out;
}

double curvature_integral(const SurfaceData& S, int j) {
  if (j < 0 || j > S.m()) throw Error(ErrorKind::Order, "curvature integral order must lie in [0, n-1]");
  std::vector<double> vals(S.nodes());
  for (std::size_t i = 0; i < S.nodes(); ++i) vals[i] = pnorm(j, S.kappa(i));
  return surface_integral(S, vals);
}

double lk_integral(const SurfaceData& S, int k) {
  if (k < 0 || 2 * k > S.m()) throw Error(ErrorKind::Order, "int L_k needs 0 <= 2k <= n-1");
  std::vector<double> vals(S.nodes());
  for (std::size_t i = 0; i < S.nodes(); ++i) vals[i] = lk_polynomial(S.kappa(i), k);
  return surface_integral(S, vals);
}

double enclosed_volume(const RotSymGraph& graph) {
  using boost::math::quadrature::gauss;
  const int n = graph.n();
  const double omega = unit_sphere_measure(n - 2);
  const auto w = simpson_weights(graph.nodes(), graph.spacing());
  auto radial = [n](double s) { return std::pow(std::sinh(s), n - 1); };
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < graph.nodes(); ++i) {  // sin^{n-2} vanishes at the poles
    const double inner = gauss<double, 64>::integrate(radial, 0.0, graph.r()[i]);
    sum += w[i] * std::pow(std::sin(graph.theta(i)), n - 2) * inner;
  }
  return omega * sum;
}

std::vector<double> quermassintegrals_from(int n, double W0, std::span<const double> p_integrals) {
  std::vector<double> W(static_cast<std::size_t>(n) + 1);
  W[0] = W0;
  W[1] = p_integrals[0] / n;
  for (int j = 1; j <= n - 1; ++j) {
    W[j + 1] = p_integrals[j] / n - static_cast<double>(j) / (n - j + 1) * W[j - 1];
  }
  return W;
}

std::vector<double> quermassintegrals(const SurfaceData& S, double W0) {
  return quermassintegrals_from(S.n, W0, curvature_integrals(S));
}

Bricks af_bricks(const SurfaceData& S, int k) {
  const int m = S.m();
  if (k < 0 || 2 * k > m) throw Error(ErrorKind::Order, "bricks need 0 <= 2k <= n-1");
  double p2k = 0.0;
  double w = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double normalized = lk_integral(S, i) / (factorial(2 * i) * binomial(m, 2 * i));
    const double ratio = (i == k) ? 1.0 : static_cast<double>(m - 2 * k) / (m - 2 * i);
    p2k += binomial(k, i) * normalized;
    w += binomial(k, i) * ratio * normalized;
  }
  return Bricks{p2k, w / S.n};
}

namespace closed_form {

double sphere_area(int n, double r) { return unit_sphere_measure(n - 1) * std::pow(std::sinh(r), n - 1); }

double sphere_p_integral(int n, double r, int j) {
  return sphere_area(n, r) * std::pow(std::cosh(r) / std::sinh(r), j);
}

double sphere_lk_integral(int n, double r, int k) {
  const int m = n - 1;
  return binomial(m, 2 * k) * factorial(2 * k) * unit_sphere_measure(m) * std::pow(std::sinh(r), m - 2 * k);
}

double sphere_volume(int n, double r) {
  // I_j = int_0^r sinh^j: I_0 = r, I_1 = cosh r - 1, I_j = sinh^{j-1} cosh / j - (j-1)/j I_{j-2}
  const int m = n - 1;
  double even = r;
  double odd = std::cosh(r) - 1.0;
  for (int j = 2; j <= m; ++j) {
    double& prev = (j % 2 == 0) ? even : odd;
    prev = std::pow(std::sinh(r), j - 1) * std::cosh(r) / j - static_cast<double>(j - 1) / j * prev;
  }
  return unit_sphere_measure(m) * ((m % 2 == 0) ? even : odd);
}

std::vector<double> sphere_quermassintegrals(int n, double r) {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) p[j] = sphere_p_integral(n, r, j);
  return quermassintegrals_from(n, sphere_volume(n, r), p);
}

}  // namespace closed_form

std::string_view to_string(Hypothesis h) noexcept {
  switch (h) {
    case Hypothesis::Any: return "Any";
    case Hypothesis::MeanConvex: return "MeanConvex";
    case Hypothesis::TwoConvex: return "TwoConvex";
    case Hypothesis::NonnegRicci: return "NonnegRicci";
    case Hypothesis::NonnegSectional: return "NonnegSectional";
  }
  return "Any";
}

ConeClass surface_class(const SurfaceData& S, double tol) {
  ConeClass weakest = ConeClass::HConvex;
  for (std::size_t i = 0; i < S.nodes(); ++i) {
    const ConeClass c = classify(S.kappa(i), tol);
    if (strength(c) < strength(weakest)) weakest = c;
  }
  return weakest;
}

std::vector<const InequalityRecord*> InequalityReport::violations() const {
  std::vector<const InequalityRecord*> out;
  for (const auto& rec : records) {
    if (rec.applicable && !rec.experimental && rec.slack < -tol * std::abs(rec.rhs)) out.push_back(&rec);
  }
  return out;
}

InequalityReport inequality_report(const SurfaceData& S, double volume, double tol) {
  const int n = S.n;
  const int m = n - 1;
  const double omega = unit_sphere_measure(m);
  const auto pint = curvature_integrals(S);
  const double A = pint[0];
  const double x = A / omega;
  const auto W = quermassintegrals_from(n, volume, pint);

  InequalityReport rep;
  rep.n = n;
  rep.tol = tol;
  rep.surface_class = surface_class(S);
  rep.mean_convex = true;
  rep.two_convex = true;
  std::vector<double> p1sq(S.nodes());
  for (std::size_t i = 0; i < S.nodes(); ++i) {
    const auto p = normalized_symmetric(S.kappa(i));
    rep.mean_convex = rep.mean_convex && p[1] > 0.0;
    rep.two_convex = rep.two_convex && p[1] > 0.0 && p[2] > 0.0;
    p1sq[i] = p[1] * p[1];
  }

  auto applicable = [&](Hypothesis h) {
    switch (h) {
      case Hypothesis::Any: return true;
      case Hypothesis::MeanConvex: return rep.mean_convex;
      case Hypothesis::TwoConvex: return rep.two_convex;
      case Hypothesis::NonnegRicci: return strength(rep.surface_class) >= strength(ConeClass::NonnegRicci);
      case Hypothesis::NonnegSectional:
        return strength(rep.surface_class) >= strength(ConeClass::NonnegSectional);
    }
    return false;
  };
  auto add = [&](std::string name, int order, double lhs, double rhs, Hypothesis h, bool identity = false,
                 bool experimental = false) {
    InequalityRecord rec;
    rec.name = std::move(name);
    rec.order = order;
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.slack = lhs - rhs;
    rec.equality = std::abs(rec.slack) <= tol * std::abs(rhs);
    rec.hypothesis = h;
    rec.applicable = applicable(h);
    rec.identity = identity;
    rec.experimental = experimental;
    rep.records.push_back(std::move(rec));
  };

  for (int k = 1; 2 * k < m; ++k) {
    const double rhs = binomial(m, 2 * k) * factorial(2 * k) * std::pow(omega, 2.0 * k / m) *
                       std::pow(A, static_cast<double>(m - 2 * k) / m);
    add("sobolev_Lk_k" + std::to_string(k), k, lk_integral(S, k), rhs, Hypothesis::NonnegSectional);
  }
  for (int k = 1; 2 * k <= m; ++k) {
    const double inner = std::pow(x, 1.0 / k) + std::pow(x, (1.0 / k) * (m - 2 * k) / m);
    add("af_even_k" + std::to_string(k), k, pint[2 * k], omega * std::pow(inner, k),
        Hypothesis::NonnegSectional, n == 3 && k == 1);
  }
  for (int k = 1; 2 * k <= m; ++k) {
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double ratio = (i == k) ? 1.0 : static_cast<double>(m - 2 * k) / (m - 2 * i);
      sum += ratio * binomial(k, i) * std::pow(x, static_cast<double>(m - 2 * i) / m);
    }
    add("quermass_odd_k" + std::to_string(k), k, W[2 * k + 1], omega / n * sum, Hypothesis::NonnegSectional,
        2 * k == m);
  }
  {
    const double rhs = omega * std::sqrt(x * x + std::pow(x, 2.0 * (n - 2) / m));
    add("ricci_af", 1, pint[1], rhs, Hypothesis::NonnegRicci);
  }
  const double lwx_rhs = A + std::pow(omega, 2.0 / m) * std::pow(A, static_cast<double>(n - 3) / m);
  add("lwx_p2", 2, pint[2], lwx_rhs, Hypothesis::TwoConvex, n == 3);
  add("cz_ratio", 2, pint[1] * pint[1], pint[2] * pint[0], Hypothesis::NonnegRicci);
  add("willmore", 1, surface_integral(S, p1sq), lwx_rhs, Hypothesis::MeanConvex);
  for (int k = 0; 2 * k + 1 <= m; ++k) {
    const double e = 2.0 / (2 * k + 1);
    const double inner = std::pow(x, e) + std::pow(x, e * (n - 2 - 2 * k) / m);
    add("conj_odd_k" + std::to_string(k), k, pint[2 * k + 1], omega * std::pow(inner, (2 * k + 1) / 2.0),
        Hypothesis::NonnegSectional, false, true);
  }
  if (m % 2 == 0) {
    add("gbc", m / 2, lk_integral(S, m / 2), factorial(m) * omega, Hypothesis::Any, true);
  }
  return rep;
}

InequalityReport inequality_report(const RotSymGraph& graph, double tol) {
  return inequality_report(surface_data_graph(graph), enclosed_volume(graph), tol);
}

InequalityReport inequality_report(const GeodesicSphere& sphere, int N, double tol) {
  const RotSymGraph g = constant_graph(sphere.n, N, sphere.radius);
  return inequality_report(g, tol);
}

}  // namespace imcflab
