#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "imcflab/error.hpp"
#include "imcflab/geometry.hpp"

namespace imcflab {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

}  // namespace

void write_surface(std::ostream& out, const RotSymGraph& graph, std::string_view kind) {
  out << graph.n() << ',' << graph.intervals() << ',' << kind << '\n';
  for (std::size_t i = 0; i < graph.nodes(); ++i) {
    out << fmt17(graph.theta(i)) << ',' << fmt17(graph.r()[i]) << '\n';
  }
}

RotSymGraph read_surface(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_content_line()) throw Error(ErrorKind::Parse, "empty surface file");
  const auto header = split_fields(line);
  if (header.size() != 3) throw Error(ErrorKind::Parse, "surface header must be 'n,N,kind'");
  int n = 0, N = 0;
  try {
    n = std::stoi(header[0]);
    N = std::stoi(header[1]);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "surface header must start with integers n,N");
  }
  const std::string& kind = header[2];
  if (kind != "graph" && kind != "sphere") {
    throw Error(ErrorKind::Parse, "surface kind must be 'graph' or 'sphere', got '" + kind + "'");
  }
  if (N < 4) throw Error(ErrorKind::Parse, "surface needs N >= 4");

  std::vector<double> r;
  r.reserve(static_cast<std::size_t>(N) + 1);
  const double h = std::numbers::pi / N;
  while (next_content_line()) {
    const auto f = split_fields(line);
    if (f.size() != 2) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 'theta,r'");
    const double th = parse_double(f[0], line_no);
    const double rv = parse_double(f[1], line_no);
    const double expected = static_cast<double>(r.size()) * h;
    if (std::abs(th - expected) > 1e-9) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": theta grid is not uniform on [0, pi]");
    }
    r.push_back(rv);
  }
  if (static_cast<int>(r.size()) != N + 1) {
    throw Error(ErrorKind::Parse, "expected " + std::to_string(N + 1) + " nodes, read " + std::to_string(r.size()));
  }
  if (kind == "sphere") {
    for (double x : r) {
      if (std::abs(x - r.front()) > 1e-12) throw Error(ErrorKind::Parse, "sphere record must have constant r");
    }
  }
  return RotSymGraph(n, std::move(r));
}

RotSymGraph read_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open surface file '" + path + "'");
  return read_surface(in);
}

void write_csv(std::ostream& out, const InequalityReport& report) {
  out << "name,lhs,rhs,slack,equality,hypothesis_class\n";
  for (const auto& rec : report.records) {
    out << rec.name << ',' << fmt17(rec.lhs) << ',' << fmt17(rec.rhs) << ',' << fmt17(rec.slack) << ','
        << (rec.equality ? "true" : "false") << ',' << to_string(report.surface_class) << '\n';
  }
}

}  // namespace imcflab
