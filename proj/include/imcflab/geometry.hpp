#pragma once

// Rotationally symmetric closed hypersurfaces in H^n = R_+ x S^{n-1} with
// metric dr^2 + sinh^2(r) g_{S^{n-1}}, written as radial graphs r(theta),
// theta in [0, pi] the polar angle. Curvature integrals, enclosed volume,
// quermassintegrals and the geometric inequality report.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imcflab/symfunc.hpp"

namespace imcflab {

struct GeodesicSphere {
  int n;
  double radius;
};

/// r(theta_i) on the uniform grid theta_i = i pi / N, i = 0..N (N even).
class RotSymGraph {
 public:
  RotSymGraph(int n, std::vector<double> r);

  int n() const noexcept { return n_; }
  int intervals() const noexcept { return static_cast<int>(r_.size()) - 1; }
  std::size_t nodes() const noexcept { return r_.size(); }
  double spacing() const noexcept;
  double theta(std::size_t i) const noexcept;
  std::span<const double> r() const noexcept { return r_; }

 private:
  int n_;
  std::vector<double> r_;
};

RotSymGraph constant_graph(int n, int N, double radius);

/// r(theta) = r0 + eps P_ell(cos theta).
RotSymGraph legendre_graph(int n, int N, double r0, double eps, int ell);

struct PerturbedSpec {
  double r0;
  double eps;
  int ell;
};

/// Seeded member of the Legendre family; eps is halved until every node is in `target`.
RotSymGraph perturbed_graph(int n, int N, std::uint64_t seed, ConeClass target,
                            PerturbedSpec* spec_out = nullptr);

/// Per-node geometry. The hypersurface has principal curvatures
/// kappa_merid (once) and kappa_par (n-2 times) at every node.
struct SurfaceData {
  int n = 0;
  double dtheta = 0.0;
  std::vector<double> theta;
  std::vector<double> r;
  std::vector<double> lambda;   // sinh r
  std::vector<double> dlambda;  // cosh r
  std::vector<double> v;        // sqrt(1 + |grad phi|^2)
  std::vector<double> kappa_merid;
  std::vector<double> kappa_par;
  std::vector<double> weight;   // omega_{n-2} lambda^{n-1} v sin^{n-2}(theta)

  std::size_t nodes() const noexcept { return r.size(); }
  int m() const noexcept { return n - 1; }
  KappaVec kappa(std::size_t i) const;
  double mean_curvature(std::size_t i) const noexcept {
    return kappa_merid[i] + (n - 2) * kappa_par[i];
  }
};

SurfaceData surface_data_sphere(int n, double radius, int N = 400);
SurfaceData surface_data_graph(const RotSymGraph& graph);

/// Composite Simpson weights on N+1 uniform nodes with spacing h.
std::vector<double> simpson_weights(std::size_t nodes, double h);

/// Integral over the surface of a per-node quantity.
double surface_integral(const SurfaceData& S, std::span<const double> values);

double area(const SurfaceData& S);
double curvature_integral(const SurfaceData& S, int j);
/// All of int p_0 .. int p_{n-1} in one pass.
std::vector<double> curvature_integrals(const SurfaceData& S);
double lk_integral(const SurfaceData& S, int k);

double enclosed_volume(const RotSymGraph& graph);

/// W_0..W_n from W_0 and the curvature integrals.
std::vector<double> quermassintegrals(const SurfaceData& S, double W0);
std::vector<double> quermassintegrals_from(int n, double W0, std::span<const double> p_integrals);

struct Bricks {
  double p2k_integral;
  double W2k1;
};
/// int p_{2k} and W_{2k+1} assembled from int L_0..int L_k.
Bricks af_bricks(const SurfaceData& S, int k);

namespace closed_form {
double sphere_area(int n, double r);
double sphere_p_integral(int n, double r, int j);
double sphere_lk_integral(int n, double r, int k);
double sphere_volume(int n, double r);
std::vector<double> sphere_quermassintegrals(int n, double r);
}  // namespace closed_form

enum class Hypothesis { Any, MeanConvex, TwoConvex, NonnegRicci, NonnegSectional };
std::string_view to_string(Hypothesis h) noexcept;

struct InequalityRecord {
  std::string name;
  int order = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  bool equality = false;
  Hypothesis hypothesis = Hypothesis::Any;
  bool applicable = false;
  bool identity = false;      // holds with equality on every closed surface of this dimension
  bool experimental = false;  // conjectured; never a failure
};

struct InequalityReport {
  int n = 0;
  double tol = 0.0;
  ConeClass surface_class = ConeClass::None;
  bool mean_convex = false;
  bool two_convex = false;
  std::vector<InequalityRecord> records;

  /// Applicable, non-experimental records with slack < -tol |rhs|.
  std::vector<const InequalityRecord*> violations() const;
};

/// Weakest nodewise class over the surface.
ConeClass surface_class(const SurfaceData& S, double tol = kConeTol);

InequalityReport inequality_report(const SurfaceData& S, double volume, double tol = 1e-6);
InequalityReport inequality_report(const RotSymGraph& graph, double tol = 1e-6);
InequalityReport inequality_report(const GeodesicSphere& sphere, int N, double tol = 1e-6);

/// CSV with columns name,lhs,rhs,slack,equality,hypothesis_class.
void write_csv(std::ostream& out, const InequalityReport& report);

/// Plain-text surface record: "n,N,kind" header then one "theta,r" pair per line.
void write_surface(std::ostream& out, const RotSymGraph& graph, std::string_view kind = "graph");
RotSymGraph read_surface(std::istream& in);
RotSymGraph read_surface_file(const std::string& path);

}  // namespace imcflab
