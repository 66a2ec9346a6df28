#pragma once

// Inverse mean curvature flow dX/dt = nu / H for rotationally symmetric radial
// graphs. In graph form the flow is dr/dt = v / H at every node.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "imcflab/geometry.hpp"

namespace imcflab {

/// H below this aborts the run.
inline constexpr double kBreakdownH = 1e-10;

struct FlowState {
  double t = 0.0;
  RotSymGraph graph;
  SurfaceData surface;
  double dt_last = 0.0;
};

FlowState make_state(RotSymGraph graph, double t = 0.0);

/// safety * dtheta^2 * min over nodes of H^2 lambda^2 / v^2.
double stable_dt(const SurfaceData& S, double safety);

/// One explicit midpoint step of dr/dt = v / H.
FlowState step(const FlowState& state, double dt);

/// asinh(sinh(r0) e^{t/(n-1)}): the radius of the evolving geodesic sphere.
double sphere_exact(int n, double r0, double t);

/// |Sigma|^{-(n-1-2k)/(n-1)} int L_k, for 0 <= 2k <= n-1.
double q_functional(const SurfaceData& S, int k);

/// min over nodes of (smallest pairwise product of principal curvatures) - 1.
double sectional_defect(const SurfaceData& S);
/// min over nodes of (smallest principal curvature) - 1.
double hconvex_defect(const SurfaceData& S);
/// max over nodes of max_i |kappa_i - 1|.
double umbilic_defect(const SurfaceData& S);

struct FlowConfig {
  int n = 3;
  int N = 200;
  std::string profile = "sphere";  // sphere | legendre | file
  double r0 = 1.0;
  double eps = 0.0;
  int ell = 2;
  std::string surface;  // path, for profile == "file"
  double t_end = 1.0;
  double stride = 0.01;
  double safety = 0.2;
  double tol = 1e-7;
  ConeClass hypothesis = ConeClass::StrictlyConvex;
  bool force = false;
  int resid_p_order = 1;
  int resid_ltilde_order = -1;  // -1: 1 when 2k+1 <= n-1 allows it, else 0

  void validate() const;
  int ltilde_order() const;
};

FlowConfig parse_flow_config(std::string_view json_text);
FlowConfig load_flow_config(const std::string& path);

RotSymGraph initial_graph(const FlowConfig& cfg);

struct MonitorRow {
  double t = 0.0;
  double area = 0.0;
  std::vector<double> Q;  // Q_0 .. Q_kmax, kmax = floor((n-1)/2)
  double sect_defect = 0.0;
  double hconvex_defect = 0.0;
  double umb_defect = 0.0;
  std::vector<double> W;                 // W_0 .. W_n
  std::vector<double> p_integrals;       // int p_j, j = 0..n-1
  std::vector<double> reilly_rhs;        // int ((n-1-j) p_{j+1} + j p_{j-1}) / ((n-1) p_1)
  std::vector<double> ltilde_integrals;  // int L~_k, k = 0..kmax
  std::vector<double> ltilde_rhs;        // (n-1-2k)/(n-1) int N~_k / p_1
  double r_min = 0.0;
  double r_max = 0.0;
  std::string status = "ok";
};

MonitorRow monitor_row(const FlowState& state);

enum class RunStatus { Ok, Breakdown };

struct MonitorSeries {
  int n = 0;
  std::vector<MonitorRow> rows;
  RunStatus status = RunStatus::Ok;
  std::string message;
  long steps = 0;
};

MonitorSeries run(const FlowConfig& cfg);

enum class Variational { Pk, Ltilde };

/// Relative mismatch between the time derivative of the recorded integral and
/// the predicted rate, per row. The derivative uses the five nearest rows.
std::vector<double> variational_residuals(const MonitorSeries& series, Variational which, int order);
/// Max of the above over all rows.
double variational_residual(const MonitorSeries& series, Variational which, int order);

/// Least-squares slope of log(umb_defect) against t over rows with t in [t0, t1].
double fit_log_umbilic_slope(const MonitorSeries& series, double t0, double t1);

/// C(n-1,2k) (2k)! omega_{n-1}^{2k/(n-1)}: the value of Q_k on every geodesic sphere.
double q_sphere_constant(int n, int k);

struct MonitorCheck {
  std::string name;
  bool pass;
  double worst;  // worst observed value of the checked quantity
};

/// Checks the run must satisfy: completion and the area law always; Q_k
/// monotonicity and lower bound plus curvature-class preservation when the
/// start was required to be NonnegSectional (or HConvex).
std::vector<MonitorCheck> check_series(const MonitorSeries& series, const FlowConfig& cfg);

/// t,area,Q_0..Q_kmax,sect_defect,hconvex_defect,umb_defect,W_0..W_n,resid_pk,resid_ltilde,status
void write_csv(std::ostream& out, const MonitorSeries& series, const FlowConfig& cfg);

}  // namespace imcflab
