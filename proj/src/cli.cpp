#include "imcflab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "imcflab/curvature.hpp"
#include "imcflab/error.hpp"
#include "imcflab/flow.hpp"
#include "imcflab/geometry.hpp"
#include "imcflab/keyineq.hpp"
#include "imcflab/symfunc.hpp"

namespace imcflab::cli {

namespace {

constexpr int kDefaultNodes = 200;
constexpr double kDefaultSafety = 0.2;
constexpr double kDefaultTol = 1e-7;
constexpr std::uint64_t kDefaultSeed = 42;

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

void defaults_header(std::ostream& out, const std::string& command, const std::string& effective) {
  out << "# imcflab " << command << '\n';
  out << "# defaults: N=" << kDefaultNodes << " safety=" << kDefaultSafety << " tol=" << fmt("%g", kDefaultTol)
      << " seed=" << kDefaultSeed << '\n';
  if (!effective.empty()) out << "# run: " << effective << '\n';
}

void table_row(std::ostream& out, const std::string& name, double closed, double numeric, double delta) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %22.15g %22.15g %12.3e\n", name.c_str(), closed, numeric, delta);
  out << buf;
}

double rel_delta(double numeric, double closed) {
  const double d = std::abs(numeric - closed);
  return closed != 0.0 ? d / std::abs(closed) : d;
}

struct ClassifyArgs {
  std::vector<double> kappa;
  double tol = kConeTol;
};

struct LkArgs {
  std::vector<double> kappa;
  int k = 1;
  std::string method = "polynomial";
};

struct GapArgs {
  int dim = 3;
  int k = 1;
  int samples = 2000;
  std::uint64_t seed = kDefaultSeed;
};

struct SphereArgs {
  int dim = 3;
  double radius = 1.0;
  int nodes = kDefaultNodes;
  double tol = kDefaultTol;
};

struct FlowArgs {
  std::string config;
  std::string out;
};

struct SurfaceArgs {
  std::string surface;
  double tol = 1e-6;
};

int run_classify(const ClassifyArgs& a, std::ostream& out) {
  out << to_string(classify(KappaVec(a.kappa), a.tol)) << '\n';
  return 0;
}

int run_lk(const LkArgs& a, std::ostream& out) {
  const KappaVec kappa(a.kappa);
  const double value = a.method == "contraction" ? lk_contraction(gauss_riemann(kappa), a.k) : lk_polynomial(kappa, a.k);
  out << fmt("%.15g", value) << '\n';
  return 0;
}

int run_verify_gap(const GapArgs& a, std::ostream& out) {
  if (a.samples < 10) throw Error(ErrorKind::Sampling, "verify-gap needs --samples >= 10");
  constexpr double gap_tol = 1e-12;
  constexpr double dispersion_tol = 1e-8;

  double max_gap = -std::numeric_limits<double>::infinity();
  double min_perm = std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.samples; ++i) {
    auto rng = derived_rng(a.seed, static_cast<std::uint64_t>(i));
    const GapSample s = gap_sample(sample_gamma_interior(a.dim, rng), a.k);
    max_gap = std::max(max_gap, s.gap);
    min_perm = std::min(min_perm, s.perm_sum);
  }
  const Calibration cal = calibrate_ratio(a.dim, a.k, a.samples, a.seed);
  const auto witness = find_positive_gap_witness(a.dim, a.k, a.seed);

  defaults_header(out, "verify-gap", "dim=" + std::to_string(a.dim) + " k=" + std::to_string(a.k) +
                                         " samples=" + std::to_string(a.samples) + " seed=" + std::to_string(a.seed));
  const bool ok = max_gap <= gap_tol && min_perm >= -gap_tol && cal.dispersion <= dispersion_tol;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-22s %.17g\n", "max_gap", max_gap);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-22s %.17g\n", "min_perm_sum", min_perm);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-22s %.17g\n", "calibration_constant", cal.constant);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-22s %.17g\n", "inverse_constant", 1.0 / cal.constant);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-22s %.3e\n", "dispersion", cal.dispersion);
  out << buf;
  out << "outside_witness        ";
  if (witness) {
    for (std::size_t i = 0; i < witness->size(); ++i) out << (i ? "," : "") << fmt("%.6g", (*witness)[i]);
    out << " gap=" << fmt("%.6g", key_gap(*witness, a.k)) << '\n';
  } else {
    out << "none\n";
  }
  out << "status                 " << (ok ? "pass" : "fail") << '\n';
  return ok ? 0 : 1;
}

int run_sphere(const SphereArgs& a, std::ostream& out) {
  const int n = a.dim;
  const int m = n - 1;
  const double R = a.radius;
  const SurfaceData S = surface_data_sphere(n, R, a.nodes);
  const auto pint = curvature_integrals(S);
  const auto W = quermassintegrals(S, enclosed_volume(constant_graph(n, a.nodes, R)));
  const auto W_closed = closed_form::sphere_quermassintegrals(n, R);

  defaults_header(out, "sphere", "dim=" + std::to_string(n) + " radius=" + fmt("%g", R) +
                                     " N=" + std::to_string(a.nodes) + " tol=" + fmt("%g", a.tol));
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %22s %22s %12s\n", "quantity", "closed_form", "numeric", "rel_delta");
  out << buf;

  double worst = 0.0;
  auto row = [&](const std::string& name, double closed, double numeric) {
    const double d = rel_delta(numeric, closed);
    worst = std::max(worst, d);
    table_row(out, name, closed, numeric, d);
  };
  row("area", closed_form::sphere_area(n, R), area(S));
  for (int j = 0; j <= m; ++j) row("V_" + std::to_string(j), closed_form::sphere_p_integral(n, R, j), pint[j]);
  for (int j = 0; j <= n; ++j) row("W_" + std::to_string(j), W_closed[j], W[j]);
  for (int k = 0; 2 * k <= m; ++k) row("L_" + std::to_string(k), closed_form::sphere_lk_integral(n, R, k), lk_integral(S, k));
  for (int k = 0; 2 * k <= m; ++k) row("Q_" + std::to_string(k), q_sphere_constant(n, k), q_functional(S, k));

  const bool ok = worst <= a.tol;
  out << "# max_rel_delta " << fmt("%.3e", worst) << ' ' << (ok ? "pass" : "fail") << '\n';
  return ok ? 0 : 1;
}

int run_flow(const FlowArgs& a, std::ostream& out) {
  const FlowConfig cfg = load_flow_config(a.config);
  const MonitorSeries series = run(cfg);

  const std::string effective = "n=" + std::to_string(cfg.n) + " N=" + std::to_string(cfg.N) + " profile=" +
                                cfg.profile + " r0=" + fmt("%g", cfg.r0) + " eps=" + fmt("%g", cfg.eps) +
                                " ell=" + std::to_string(cfg.ell) + " t_end=" + fmt("%g", cfg.t_end) +
                                " stride=" + fmt("%g", cfg.stride) + " safety=" + fmt("%g", cfg.safety) +
                                " tol=" + fmt("%g", cfg.tol) + " hypothesis=" + std::string(to_string(cfg.hypothesis)) +
                                (cfg.force ? " force" : "");
  {
    std::ofstream csv(a.out);
    if (!csv) throw Error(ErrorKind::Parse, "cannot write '" + a.out + "'");
    defaults_header(csv, "flow", effective);
    write_csv(csv, series, cfg);
    if (!csv) throw Error(ErrorKind::Parse, "write to '" + a.out + "' failed");
  }

  defaults_header(out, "flow", effective);
  out << "# steps " << series.steps << " rows " << series.rows.size() << '\n';
  if (!series.message.empty()) out << "# " << series.message << '\n';
  bool ok = true;
  char buf[160];
  for (const auto& c : check_series(series, cfg)) {
    std::snprintf(buf, sizeof buf, "%-22s %14.6e %s\n", c.name.c_str(), c.worst, c.pass ? "pass" : "fail");
    out << buf;
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}

int run_check_inequalities(const SurfaceArgs& a, std::ostream& out) {
  const RotSymGraph graph = read_surface_file(a.surface);
  const InequalityReport report = inequality_report(graph, a.tol);
  defaults_header(out, "check-inequalities", "surface=" + a.surface + " n=" + std::to_string(graph.n()) +
                                                 " N=" + std::to_string(graph.intervals()) + " tol=" + fmt("%g", a.tol));
  write_csv(out, report);
  return report.violations().empty() ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature functionals and inverse mean curvature flow in hyperbolic space", "imcflab"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Strongest cone class of a principal-curvature vector");
  classify_cmd->add_option("--kappa", ca.kappa, "Comma-separated curvatures")->delimiter(',')->required();
  classify_cmd->add_option("--tol", ca.tol, "Comparison tolerance")->capture_default_str();

  LkArgs la;
  auto* lk_cmd = app.add_subcommand("lk", "Gauss-Bonnet curvature L_k of a principal-curvature vector");
  lk_cmd->add_option("--kappa", la.kappa, "Comma-separated curvatures")->delimiter(',')->required();
  lk_cmd->add_option("--k", la.k, "Order")->required();
  lk_cmd->add_option("--method", la.method, "contraction or polynomial")
      ->check(CLI::IsMember({"contraction", "polynomial"}))
      ->capture_default_str();

  GapArgs ga;
  auto* gap_cmd = app.add_subcommand("verify-gap", "Sample the key inequality and calibrate its permutation sum");
  gap_cmd->add_option("--dim", ga.dim, "Number of principal curvatures m")->required();
  gap_cmd->add_option("--k", ga.k, "Order")->required();
  gap_cmd->add_option("--samples", ga.samples, "Sample count")->capture_default_str();
  gap_cmd->add_option("--seed", ga.seed, "Seed")->capture_default_str();

  SphereArgs sa;
  auto* sphere_cmd = app.add_subcommand("sphere", "Closed-form versus numeric table for a geodesic sphere");
  sphere_cmd->add_option("--dim", sa.dim, "Ambient dimension n")->required();
  sphere_cmd->add_option("--radius", sa.radius, "Geodesic radius")->required();
  sphere_cmd->add_option("--nodes", sa.nodes, "Grid intervals N")->capture_default_str();
  sphere_cmd->add_option("--tol", sa.tol, "Relative tolerance")->capture_default_str();

  FlowArgs fa;
  auto* flow_cmd = app.add_subcommand("flow", "Run inverse mean curvature flow from a JSON config");
  flow_cmd->add_option("--config", fa.config, "JSON config path")->required();
  flow_cmd->add_option("--out", fa.out, "CSV output path")->required();

  SurfaceArgs ia;
  auto* ineq_cmd = app.add_subcommand("check-inequalities", "Inequality report for a stored surface");
  ineq_cmd->add_option("--surface", ia.surface, "Surface file")->required();
  ineq_cmd->add_option("--tol", ia.tol, "Relative slack tolerance")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*classify_cmd) return run_classify(ca, out);
    if (*lk_cmd) return run_lk(la, out);
    if (*gap_cmd) return run_verify_gap(ga, out);
    if (*sphere_cmd) return run_sphere(sa, out);
    if (*flow_cmd) return run_flow(fa, out);
    if (*ineq_cmd) return run_check_inequalities(ia, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::Parse ? 2 : 1;
  }
  return 2;
}

}  // namespace imcflab::cli
