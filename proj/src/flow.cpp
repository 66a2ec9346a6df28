#include "imcflab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "imcflab/curvature.hpp"
#include "imcflab/error.hpp"

namespace imcflab {

FlowState make_state(RotSymGraph graph, double t) {
  SurfaceData S = surface_data_graph(graph);
  return FlowState{t, std::move(graph), std::move(S), 0.0};
}

double stable_dt(const SurfaceData& S, double safety) {
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < S.nodes(); ++i) {
    const double H = S.mean_curvature(i);
    bound = std::min(bound, H * H * S.lambda[i] * S.lambda[i] / (S.v[i] * S.v[i]));
  }
  return safety * S.dtheta * S.dtheta * bound;
}

namespace {

std::vector<double> normal_speed(const SurfaceData& S) {
  std::vector<double> speed(S.nodes());
  for (std::size_t i = 0; i < S.nodes(); ++i) {
    const double H = S.mean_curvature(i);
    if (!(H > kBreakdownH)) {
      throw Error(ErrorKind::FlowBreakdown, "mean curvature " + std::to_string(H) + " at node " +
                                                std::to_string(i) + " (theta=" + std::to_string(S.theta[i]) + ")");
    }
    speed[i] = S.v[i] / H;
  }
  return speed;
}

RotSymGraph advance(const RotSymGraph& g, const std::vector<double>& speed, double dt) {
  std::vector<double> r(g.r().begin(), g.r().end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] += dt * speed[i];
    if (!std::isfinite(r[i])) throw Error(ErrorKind::Instability, "non-finite radius at node " + std::to_string(i));
    if (r[i] <= 0.0) throw Error(ErrorKind::Instability, "radius collapsed at node " + std::to_string(i));
  }
  return RotSymGraph(g.n(), std::move(r));
}

}  // namespace

FlowState step(const FlowState& state, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::Domain, "time step must be positive");
  const auto f0 = normal_speed(state.surface);
  const RotSymGraph half = advance(state.graph, f0, 0.5 * dt);
  const auto f1 = normal_speed(surface_data_graph(half));
  RotSymGraph next = advance(state.graph, f1, dt);
  FlowState out = make_state(std::move(next), state.t + dt);
  out.dt_last = dt;
  return out;
}

double sphere_exact(int n, double r0, double t) {
  return std::asinh(std::sinh(r0) * std::exp(t / (n - 1)));
}

double q_functional(const SurfaceData& S, int k) {
  const int m = S.m();
  if (k < 0 || 2 * k > m) throw Error(ErrorKind::Order, "Q_k needs 0 <= 2k <= n-1");
  return std::pow(area(S), -static_cast<double>(m - 2 * k) / m) * lk_integral(S, k);
}

double sectional_defect(const SurfaceData& S) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < S.nodes(); ++i) {
    double pair = S.kappa_merid[i] * S.kappa_par[i];
    if (S.n >= 4) pair = std::min(pair, S.kappa_par[i] * S.kappa_par[i]);
    d = std::min(d, pair - 1.0);
  }
  return d;
}

double hconvex_defect(const SurfaceData& S) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < S.nodes(); ++i) d = std::min({d, S.kappa_merid[i] - 1.0, S.kappa_par[i] - 1.0});
  return d;
}

double umbilic_defect(const SurfaceData& S) {
  double d = 0.0;
  for (std::size_t i = 0; i < S.nodes(); ++i) {
    d = std::max({d, std::abs(S.kappa_merid[i] - 1.0), std::abs(S.kappa_par[i] - 1.0)});
  }
  return d;
}

void FlowConfig::validate() const {
  if (n < 3) throw Error(ErrorKind::Dimension, "flow config: n must be >= 3");
  if (N < 4 || N % 2) throw Error(ErrorKind::Discretization, "flow config: N must be even and >= 4");
  if (!(t_end > 0.0)) throw Error(ErrorKind::Parse, "flow config: t_end must be > 0");
  if (!(stride > 0.0)) throw Error(ErrorKind::Parse, "flow config: stride must be > 0");
  if (!(safety > 0.0 && safety < 1.0)) throw Error(ErrorKind::Parse, "flow config: safety must lie in (0, 1)");
  if (!(tol > 0.0)) throw Error(ErrorKind::Parse, "flow config: tol must be > 0");
  if (profile != "sphere" && profile != "legendre" && profile != "file") {
    throw Error(ErrorKind::Parse, "flow config: profile must be sphere, legendre or file");
  }
  if (profile == "file" && surface.empty()) throw Error(ErrorKind::Parse, "flow config: profile 'file' needs 'surface'");
  if (resid_p_order < 0 || resid_p_order > n - 1) throw Error(ErrorKind::Order, "flow config: resid_p_order out of range");
  if (resid_ltilde_order >= 0 && 2 * resid_ltilde_order > n - 1) {
    throw Error(ErrorKind::Order, "flow config: resid_ltilde_order out of range");
  }
}

int FlowConfig::ltilde_order() const {
  if (resid_ltilde_order >= 0) return resid_ltilde_order;
  return (3 <= n - 1) ? 1 : 0;
}

RotSymGraph initial_graph(const FlowConfig& cfg) {
  if (cfg.profile == "sphere") return constant_graph(cfg.n, cfg.N, cfg.r0);
  if (cfg.profile == "legendre") return legendre_graph(cfg.n, cfg.N, cfg.r0, cfg.eps, cfg.ell);
  RotSymGraph g = read_surface_file(cfg.surface);
  if (g.n() != cfg.n || g.intervals() != cfg.N) {
    throw Error(ErrorKind::Parse, "surface file dimensions disagree with the flow config");
  }
  return g;
}

MonitorRow monitor_row(const FlowState& state) {
  const SurfaceData& S = state.surface;
  const int n = S.n;
  const int m = n - 1;
  const int kmax = m / 2;
  const std::size_t nodes = S.nodes();

  std::vector<std::vector<double>> p_vals(m + 1, std::vector<double>(nodes));
  std::vector<std::vector<double>> reilly(m + 1, std::vector<double>(nodes));
  std::vector<std::vector<double>> lt(kmax + 1, std::vector<double>(nodes));
  std::vector<std::vector<double>> lt_rate(kmax + 1, std::vector<double>(nodes));
  std::vector<std::vector<double>> lk(kmax + 1, std::vector<double>(nodes));
  for (std::size_t i = 0; i < nodes; ++i) {
    const auto p = normalized_symmetric(S.kappa(i));
    const double H = m * p[1];
    for (int j = 0; j <= m; ++j) {
      p_vals[j][i] = p[j];
      const double up = (j < m) ? (m - j) * p[j + 1] : 0.0;
      const double down = (j > 0) ? j * p[j - 1] : 0.0;
      reilly[j][i] = (up + down) / H;
    }
    for (int k = 0; k <= kmax; ++k) {
      lt[k][i] = ltilde_from_p(p, k);
      lk[k][i] = lk_from_p(p, m, k);
      lt_rate[k][i] = (2 * k + 1 <= m) ? static_cast<double>(m - 2 * k) / m * ntilde_from_p(p, k) / p[1] : 0.0;
    }
  }

  MonitorRow row;
  row.t = state.t;
  for (int j = 0; j <= m; ++j) {
    row.p_integrals.push_back(surface_integral(S, p_vals[j]));
    row.reilly_rhs.push_back(surface_integral(S, reilly[j]));
  }
  row.area = row.p_integrals[0];
  for (int k = 0; k <= kmax; ++k) {
    row.ltilde_integrals.push_back(surface_integral(S, lt[k]));
    row.ltilde_rhs.push_back(surface_integral(S, lt_rate[k]));
    row.Q.push_back(std::pow(row.area, -static_cast<double>(m - 2 * k) / m) * surface_integral(S, lk[k]));
  }
  row.sect_defect = sectional_defect(S);
  row.hconvex_defect = hconvex_defect(S);
  row.umb_defect = umbilic_defect(S);
  row.W = quermassintegrals_from(n, enclosed_volume(state.graph), row.p_integrals);
  const auto [lo, hi] = std::minmax_element(S.r.begin(), S.r.end());
  row.r_min = *lo;
  row.r_max = *hi;
  return row;
}

MonitorSeries run(const FlowConfig& cfg) {
  cfg.validate();
  FlowState state = make_state(initial_graph(cfg));

  if (!cfg.force) {
    for (std::size_t i = 0; i < state.surface.nodes(); ++i) {
      const ConeClass c = classify(state.surface.kappa(i), kConeTol);
      if (strength(c) < strength(cfg.hypothesis)) {
        throw Error(ErrorKind::Hypothesis, "initial surface is " + std::string(to_string(c)) + " at node " +
                                               std::to_string(i) + ", requested " +
                                               std::string(to_string(cfg.hypothesis)));
      }
    }
  }

  MonitorSeries series;
  series.n = cfg.n;
  series.rows.push_back(monitor_row(state));

  long outputs = 0;
  try {
    while (state.t < cfg.t_end - 1e-12) {
      const double target = std::min(cfg.stride * static_cast<double>(outputs + 1), cfg.t_end);
      const double remaining = target - state.t;
      double dt = stable_dt(state.surface, cfg.safety);
      if (remaining <= dt) {
        dt = remaining;
      } else if (remaining < 2.0 * dt) {
        dt = 0.5 * remaining;
      }
      state = step(state, dt);
      ++series.steps;
      if (std::abs(state.t - target) <= 1e-12 * std::max(1.0, target)) {
        state.t = target;
        series.rows.push_back(monitor_row(state));
        ++outputs;
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FlowBreakdown && e.kind() != ErrorKind::Instability &&
        e.kind() != ErrorKind::Discretization) {
      throw;
    }
    series.status = RunStatus::Breakdown;
    series.message = e.what();
    if (state.t > series.rows.back().t) {
      series.rows.push_back(monitor_row(state));
    }
    series.rows.back().status = "breakdown";
  }
  return series;
}

namespace {

const std::vector<double>& pick(const MonitorRow& row, Variational which, bool rhs) {
  if (which == Variational::Pk) return rhs ? row.reilly_rhs : row.p_integrals;
  return rhs ? row.ltilde_rhs : row.ltilde_integrals;
}

// First-derivative weights at t0 for the nodes t (Fornberg's recursion).
std::vector<double> derivative_weights(double t0, std::span<const double> t) {
  const std::size_t n = t.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = t[i] - t[j];
      c2 *= c3;
      if (j == i - 1) {
        c[i][1] = c1 * (c[i - 1][0] - (t[i - 1] - t0) * c[i - 1][1]) / c2;
        c[i][0] = -c1 * (t[i - 1] - t0) * c[i - 1][0] / c2;
      }
      c[j][1] = ((t[i] - t0) * c[j][1] - c[j][0]) / c3;
      c[j][0] = (t[i] - t0) * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

}  // namespace

std::vector<double> variational_residuals(const MonitorSeries& series, Variational which, int order) {
  const std::size_t rows = series.rows.size();
  if (rows < 3) throw Error(ErrorKind::Series, "variational residual needs at least 3 rows");
  const std::size_t width = pick(series.rows.front(), which, false).size();
  if (order < 0 || static_cast<std::size_t>(order) >= width) {
    throw Error(ErrorKind::Order, "variational residual order out of range");
  }

  // five nearest rows (fewer if the series is short), shifted inward at the ends
  const std::size_t span = std::min<std::size_t>(5, rows);
  std::vector<double> out(rows);
  std::vector<double> ts(span);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t lo = std::min(i >= span / 2 ? i - span / 2 : 0, rows - span);
    for (std::size_t j = 0; j < span; ++j) ts[j] = series.rows[lo + j].t;
    const auto w = derivative_weights(series.rows[i].t, ts);
    double deriv = 0.0;
    for (std::size_t j = 0; j < span; ++j) deriv += w[j] * pick(series.rows[lo + j], which, false)[order];
    const double y = pick(series.rows[i], which, false)[order];
    const double rhs = pick(series.rows[i], which, true)[order];
    out[i] = std::abs(deriv - rhs) / std::max(std::abs(rhs), std::abs(y));
  }
  return out;
}

double variational_residual(const MonitorSeries& series, Variational which, int order) {
  const auto res = variational_residuals(series, which, order);
  double worst = -1.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

double fit_log_umbilic_slope(const MonitorSeries& series, double t0, double t1) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  int count = 0;
  for (const auto& row : series.rows) {
    if (row.t < t0 - 1e-12 || row.t > t1 + 1e-12 || !(row.umb_defect > 0.0)) continue;
    const double y = std::log(row.umb_defect);
    st += row.t;
    sy += y;
    stt += row.t * row.t;
    sty += row.t * y;
    ++count;
  }
  if (count < 2) throw Error(ErrorKind::Series, "not enough rows in the fitting window");
  return (count * sty - st * sy) / (count * stt - st * st);
}

double q_sphere_constant(int n, int k) {
  const int m = n - 1;
  return binomial(m, 2 * k) * factorial(2 * k) * std::pow(unit_sphere_measure(m), 2.0 * k / m);
}

std::vector<MonitorCheck> check_series(const MonitorSeries& series, const FlowConfig& cfg) {
  std::vector<MonitorCheck> checks;
  checks.push_back({"completed", series.status == RunStatus::Ok, series.status == RunStatus::Ok ? 0.0 : 1.0});

  const auto& rows = series.rows;
  double area_err = 0.0;
  for (const auto& row : rows) area_err = std::max(area_err, std::abs(std::log(row.area / rows.front().area) - row.t));
  checks.push_back({"area_law", area_err <= 1e-5, area_err});

  if (cfg.force || strength(cfg.hypothesis) < strength(ConeClass::NonnegSectional)) return checks;

  const int kmax = (series.n - 1) / 2;
  for (int k = 1; k <= kmax; ++k) {
    const double q0 = rows.front().Q[k];
    double worst_rise = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) worst_rise = std::max(worst_rise, rows[i].Q[k] - rows[i - 1].Q[k]);
    checks.push_back({"q_monotone_k" + std::to_string(k), worst_rise <= cfg.tol * std::abs(q0), worst_rise});

    const double bound = q_sphere_constant(series.n, k);
    double worst_rel = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) worst_rel = std::min(worst_rel, (row.Q[k] - bound) / bound);
    checks.push_back({"q_lower_bound_k" + std::to_string(k), worst_rel >= -1e-6, worst_rel});
  }

  double sect = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) sect = std::min(sect, row.sect_defect);
  checks.push_back({"sectional_preserved", sect >= -cfg.tol, sect});

  if (cfg.hypothesis == ConeClass::HConvex) {
    double hc = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) hc = std::min(hc, row.hconvex_defect);
    checks.push_back({"hconvex_preserved", hc >= -cfg.tol, hc});
  }
  return checks;
}

}  // namespace imcflab
