#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "imcflab/error.hpp"
#include "imcflab/flow.hpp"
#include "json.hpp"

namespace imcflab {

namespace {

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
void read_key(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("flow config key '") + key + "': " + e.what());
  }
}

}  // namespace

FlowConfig parse_flow_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("flow config: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "flow config must be a JSON object");

  static const char* const known[] = {"n",      "N",      "profile", "r0",         "eps",
                                      "ell",    "surface", "t_end",  "stride",     "safety",
                                      "tol",    "hypothesis", "force", "resid_p_order", "resid_ltilde_order"};
  for (const auto& item : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw Error(ErrorKind::Parse, "flow config: unknown key '" + item.key() + "'");
  }

  FlowConfig cfg;
  read_key(doc, "n", cfg.n);
  read_key(doc, "N", cfg.N);
  read_key(doc, "profile", cfg.profile);
  read_key(doc, "r0", cfg.r0);
  read_key(doc, "eps", cfg.eps);
  read_key(doc, "ell", cfg.ell);
  read_key(doc, "surface", cfg.surface);
  read_key(doc, "t_end", cfg.t_end);
  read_key(doc, "stride", cfg.stride);
  read_key(doc, "safety", cfg.safety);
  read_key(doc, "tol", cfg.tol);
  read_key(doc, "force", cfg.force);
  read_key(doc, "resid_p_order", cfg.resid_p_order);
  read_key(doc, "resid_ltilde_order", cfg.resid_ltilde_order);
  if (doc.contains("hypothesis")) {
    std::string h;
    read_key(doc, "hypothesis", h);
    cfg.hypothesis = cone_class_from_string(h);
  }
  cfg.validate();
  return cfg;
}

FlowConfig load_flow_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open flow config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_flow_config(ss.str());
}

void write_csv(std::ostream& out, const MonitorSeries& series, const FlowConfig& cfg) {
  const int n = series.n;
  const int kmax = (n - 1) / 2;
  out << "t,area";
  for (int k = 0; k <= kmax; ++k) out << ",Q_" << k;
  out << ",sect_defect,hconvex_defect,umb_defect";
  for (int j = 0; j <= n; ++j) out << ",W_" << j;
  out << ",resid_pk,resid_ltilde,status\n";

  std::vector<double> rp(series.rows.size(), NAN), rl(series.rows.size(), NAN);
  if (series.rows.size() >= 3) {
    rp = variational_residuals(series, Variational::Pk, cfg.resid_p_order);
    rl = variational_residuals(series, Variational::Ltilde, cfg.ltilde_order());
  }
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const auto& row = series.rows[i];
    out << fmt17(row.t) << ',' << fmt17(row.area);
    for (double q : row.Q) out << ',' << fmt17(q);
    out << ',' << fmt17(row.sect_defect) << ',' << fmt17(row.hconvex_defect) << ',' << fmt17(row.umb_defect);
    for (double w : row.W) out << ',' << fmt17(w);
    out << ',' << fmt17(rp[i]) << ',' << fmt17(rl[i]) << ',' << row.status << '\n';
  }
}

}  // namespace imcflab
