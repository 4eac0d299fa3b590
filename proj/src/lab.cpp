#include "qgh/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "qgh/asymptotics.hpp"
#include "qgh/direct.hpp"
#include "qgh/dispersion.hpp"
#include "qgh/effective.hpp"
#include "qgh/krein.hpp"
#include "qgh/realline.hpp"

namespace qgh {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pairs, double lo, double hi) {
  if (pairs.size() < 4) throw ParamError("slope fit needs at least 4 points");
  SlopeFit s;
  s.lo = lo;
  s.hi = hi;
  const double n = double(pairs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [e, r] : pairs) {
    if (!(e > 0) || !(r > 0)) throw ParamError("slope fit needs positive values");
    s.eps.push_back(e);
    s.err.push_back(r);
    const double x = std::log(e), y = std::log(r);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  s.slope = (n * sxy - sx * sy) / den;
  s.intercept = (sy - s.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (auto [e, r] : pairs) {
    const double y = std::log(r), f = s.intercept + s.slope * std::log(e);
    ss_res += (y - f) * (y - f);
    ss_tot += (y - sy / n) * (y - sy / n);
  }
  s.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : (ss_res == 0 ? 1.0 : 0.0);
  s.pass = s.slope >= lo && s.slope <= hi;
  return s;
}

double operator_norm_diff(const CMat& a, const CMat& b, const RVec& weights, int max_iter, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols() || weights.size() != a.rows())
    throw ParamError("operator_norm_diff: non-conformable blocks");
  const RVec sw = weights.cwiseSqrt();
  const CMat d = sw.cast<cplx>().asDiagonal() * (a - b) * sw.cwiseInverse().cast<cplx>().asDiagonal();
  if (d.norm() == 0) return 0.0;
  // deterministic start with every component present
  CVec v(d.cols());
  for (int i = 0; i < v.size(); ++i) v(i) = cplx(1.0 + 0.1 * std::sin(1.0 + i), 0.3 * std::cos(2.0 + i));
  v.normalize();
  double sigma = 0;
  for (int it = 0; it < max_iter; ++it) {
    CVec w = d.adjoint() * (d * v);
    const double lam = std::sqrt(std::abs(v.dot(w)));
    const double nw = w.norm();
    if (nw == 0) return 0.0;
    v = w / nw;
    if (std::abs(lam - sigma) <= tol * lam) {
      sigma = lam;
      break;
    }
    sigma = lam;
  }
  return (d * v).norm();
}

double operator_norm(const CMat& a, const RVec& weights, int max_iter, double tol) {
  return operator_norm_diff(a, CMat::Zero(a.rows(), a.cols()), weights, max_iter, tol);
}

int worker_count() {
  if (const char* s = std::getenv("QGH_WORKERS")) {
    const int n = std::atoi(s);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int w = std::min(worker_count(), n);
  if (w <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

void Table::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParamError("cannot write " + path);
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << "\n";
  }
}

// ---------------------------------------------------------------- specs

const std::vector<std::string>& experiment_tags() {
  static const std::vector<std::string> tags{
      "additivity",      "herglotz",         "krein_vs_direct", "gen_res_rate", "full_res_rate",
      "btilde_identity", "beff_rate",        "dispersion_series", "sum_identities", "schur_check",
      "bands",           "dilation",         "line_models"};
  return tags;
}

int criterion_of(const std::string& tag) {
  const auto& t = experiment_tags();
  const auto it = std::find(t.begin(), t.end(), tag);
  if (it == t.end()) throw ParamError("unknown experiment tag '" + tag + "'");
  return int(it - t.begin()) + 1;
}

std::vector<double> default_tau_grid(int n) {
  std::vector<double> t;
  const double a = -kPi + 1e-3, b = kPi - 1e-3;
  for (int i = 0; i < n; ++i) t.push_back(a + (b - a) * i / (n - 1));
  return t;
}

std::vector<double> geometric_eps(int first_exp, int last_exp) {
  std::vector<double> e;
  for (int k = first_exp; k <= last_exp; ++k) e.push_back(std::ldexp(1.0, -k));
  return e;
}

namespace {

std::vector<ExampleParams> all_examples() {
  return {default_params(ExampleId::Ex0), default_params(ExampleId::Ex1), default_params(ExampleId::Ex2)};
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    v.push_back(std::stod(item));
  }
  return v;
}

// "2+1i", "10-0.5i", "3"
cplx parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw ParamError("empty complex value");
  if (s.back() != 'i') return {std::stod(s), 0.0};
  s.pop_back();
  size_t pos = s.find_last_of("+-");
  if (pos == std::string::npos || pos == 0) return {0.0, std::stod(s.empty() ? "1" : s)};
  return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos))};
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

SweepSpec default_spec(const std::string& tag) {
  criterion_of(tag);
  SweepSpec s;
  s.tag = tag;
  s.examples = all_examples();
  s.taus = default_tau_grid(17);
  s.epss = geometric_eps(3, 8);
  s.zs = {cplx(2, 1), cplx(5, 2), cplx(10, 0.7)};
  if (tag == "krein_vs_direct") {
    s.taus = {1.0};
    s.epss = {0.25};
    s.zs = {cplx(2, 1)};
  } else if (tag == "btilde_identity") {
    s.examples = {default_params(ExampleId::Ex0), default_params(ExampleId::Ex2)};
    s.taus = default_tau_grid(10);
    // the literal transform cancels O(eps^-2) entries down to O(1); round-off grows like eps^-2
    s.epss = {0.5, 0.4, 0.3, 0.2, 0.1};
    s.zs.clear();
    for (int j = 0; j < 10; ++j) s.zs.push_back(cplx(0.5 + 2.2 * j, 0.5 + 0.25 * j));
  } else if (tag == "dispersion_series") {
    s.epss = {1.0};
  } else if (tag == "sum_identities") {
    s.examples.clear();
    s.taus = {0.3, 1.0, 2.5};  // the x values
    s.J = 1000000;
  } else if (tag == "schur_check") {
    s.epss = {0.125, 0.015625};
  } else if (tag == "bands") {
    s.examples = {default_params(ExampleId::Ex0), default_params(ExampleId::Ex2)};
    s.resolutions = {500, 1000};
  } else if (tag == "dilation") {
    s.taus = default_tau_grid(5);
    s.epss = {0.125, 0.015625};
  }
  return s;
}

void validate(const SweepSpec& s) {
  criterion_of(s.tag);
  for (const auto& p : s.examples) validate(p);
  for (size_t i = 1; i < s.epss.size(); ++i)
    if (!(s.epss[i] < s.epss[i - 1])) throw ParamError("eps grid must be strictly decreasing");
  for (double e : s.epss)
    if (!(e > 0)) throw ParamError("eps values must be positive");
  static const std::vector<std::string> rate_tags{"gen_res_rate", "full_res_rate", "beff_rate", "bands"};
  if (std::find(rate_tags.begin(), rate_tags.end(), s.tag) != rate_tags.end() && s.epss.size() < 4)
    throw ParamError("slope fits need at least 4 eps values");
  if (s.tag != "sum_identities")
    for (double t : s.taus) check_tau(t);
  for (cplx z : s.zs)
    if (!(z.imag() > 0)) throw ParamError("z samples must lie in the upper half plane");
  if (s.J < 10) throw ParamError("J must be at least 10");
}

SweepSpec parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int ln = 0;
  while (std::getline(ss, line)) {
    ++ln;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParamError("config line " + std::to_string(ln) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!kv.count("tag")) throw ParamError("config needs a tag");
  SweepSpec s = default_spec(kv["tag"]);
  std::map<std::string, double> geo;
  for (const auto& [k, v] : kv) {
    if (k == "tag") continue;
    if (k == "example") {
      if (v != "all") {
        ExampleParams p = default_params(parse_example(v));
        s.examples = {p};
      }
    } else if (k == "l1" || k == "l2" || k == "l3" || k == "a1" || k == "a2" || k == "a3") {
      geo[k] = std::stod(v);
    } else if (k == "tau") {
      s.taus = split_doubles(v);
    } else if (k == "tau_points") {
      s.taus = default_tau_grid(std::stoi(v));
    } else if (k == "eps") {
      s.epss = split_doubles(v);
    } else if (k == "eps_exp") {
      const auto r = split_doubles(v);
      if (r.size() != 2) throw ParamError("eps_exp takes first,last");
      s.epss = geometric_eps(int(r[0]), int(r[1]));
    } else if (k == "z") {
      s.zs.clear();
      std::stringstream zs(v);
      std::string item;
      while (std::getline(zs, item, ',')) s.zs.push_back(parse_complex(item));
    } else if (k == "resolution") {
      s.resolutions.clear();
      for (double r : split_doubles(v)) s.resolutions.push_back(int(r));
    } else if (k == "J") {
      s.J = std::stoi(v);
    } else if (k == "modes") {
      s.modes = std::stoi(v);
    } else if (k == "line_X") {
      s.line_X = std::stod(v);
    } else if (k == "line_n") {
      s.line_n = std::stoi(v);
    } else {
      throw ParamError("unknown config key '" + k + "'");
    }
  }
  for (auto& p : s.examples) {
    if (geo.count("l1")) p.l1 = geo["l1"];
    if (geo.count("l2")) p.l2 = geo["l2"];
    if (geo.count("l3")) p.l3 = geo["l3"];
    if (geo.count("a1")) p.a1 = geo["a1"];
    if (geo.count("a2")) p.a2 = geo["a2"];
    if (geo.count("a3")) p.a3 = geo["a3"];
  }
  validate(s);
  return s;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot read config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// ---------------------------------------------------------------- experiments

namespace {

using Row = std::vector<std::string>;

struct Point {
  int ex = 0;
  double tau = 0, eps = 0;
  cplx z;
};

// one grid point's output: rows plus a scalar for the summary
struct Cell {
  std::vector<Row> rows;
  double a = 0, b = 0, c = 0, d = 0;
  bool ok = true;
  std::string error;
};

std::string zre(cplx z) { return fmt(z.real()); }
std::string zim(cplx z) { return fmt(z.imag()); }
const char* ename(const ExampleParams& p) { return example_name(p.id); }

template <class F>
std::vector<Cell> run_cells(int n, F&& f) {
  std::vector<Cell> out(n);
  parallel_for(n, [&](int i) {
    try {
      out[i] = f(i);
    } catch (const std::exception& e) {
      out[i].ok = false;
      out[i].error = e.what();
    }
  });
  return out;
}

// merges rows in grid order; returns the number of failed points
int collect(Report& r, const std::vector<Cell>& cells) {
  int bad = 0;
  for (const auto& c : cells) {
    if (!c.ok) {
      ++bad;
      r.table.rows.push_back({"error", c.error});
      continue;
    }
    for (const auto& row : c.rows) r.table.rows.push_back(row);
  }
  r.point_errors = bad;
  return bad;
}

double entry_rel(const CMat& ref, const CMat& x) {
  double m = 0;
  for (int i = 0; i < ref.rows(); ++i)
    for (int j = 0; j < ref.cols(); ++j) {
      const double d = std::abs(ref(i, j) - x(i, j));
      const double s = std::abs(ref(i, j));
      m = std::max(m, s > 0 ? d / s : d);
    }
  return m;
}

std::vector<Point> grid(const SweepSpec& s, bool with_eps) {
  std::vector<Point> pts;
  for (int e = 0; e < int(s.examples.size()); ++e)
    for (double t : s.taus)
      for (cplx z : s.zs) {
        if (with_eps) {
          for (double eps : s.epss) pts.push_back({e, t, eps, z});
        } else {
          pts.push_back({e, t, 0.0, z});
        }
      }
  return pts;
}

std::string slope_line(const std::string& what, const std::vector<SlopeFit>& fits) {
  double lo = 1e9, hi = -1e9, r2 = 1;
  for (const auto& f : fits) lo = std::min(lo, f.slope), hi = std::max(hi, f.slope), r2 = std::min(r2, f.r2);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%s: %zu fits, slopes in [%.3f, %.3f], min R^2 %.4f", what.c_str(), fits.size(), lo, hi,
                r2);
  return buf;
}

// ---- 1
Report additivity(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "eps", "tau", "re_z", "im_z", "dev_closed", "dev_general"};
  const auto pts = grid(s, true);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    const FiberParams f = make_fiber(q.eps, q.tau, q.z);
    const MMatrixSet mc = m_blocks_closed(p, f);
    const MetricGraph g = build_example(p);
    const DattaWeights w = datta_weights(p, q.tau);
    const CMat mf = m_general(g, w, f, Component::Full);
    const CMat sum_c = mc.m_stiff + mc.m_soft;
    const CMat sum_g = m_general(g, w, f, Component::Stiff) + m_general(g, w, f, Component::Soft);
    Cell c;
    c.a = std::max(entry_rel(mf, sum_c), entry_rel(mf, CMat(mc.m_full)));
    c.b = entry_rel(mf, sum_g);
    c.rows.push_back({ename(p), fmt(q.eps), fmt(q.tau), zre(q.z), zim(q.z), fmt(c.a), fmt(c.b)});
    return c;
  });
  const int bad = collect(r, cells);
  double worst = 0;
  std::vector<int> count(s.examples.size(), 0);
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].ok) worst = std::max({worst, cells[i].a, cells[i].b}), ++count[pts[i].ex];
  const int minc = count.empty() ? 0 : *std::min_element(count.begin(), count.end());
  r.pass = bad == 0 && worst <= 1e-11 && minc >= 100;
  r.summary.push_back("max entrywise relative deviation " + fmt(worst) + " (bound 1e-11) over " + std::to_string(minc) +
                      "+ points per example");
  return r;
}

// ---- 2
Report herglotz(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "eps", "tau", "re_z", "im_z", "block", "symmetry_defect", "min_eig_im"};
  const auto pts = grid(s, true);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    const MetricGraph g = build_example(p);
    const DattaWeights w = datta_weights(p, q.tau);
    Cell c;
    c.b = INFINITY;
    const char* names[3] = {"full", "stiff", "soft"};
    const Component comps[3] = {Component::Full, Component::Stiff, Component::Soft};
    for (int k = 0; k < 3; ++k) {
      const CMat m = m_general(g, w, make_fiber(q.eps, q.tau, q.z), comps[k]);
      const CMat mb = m_general(g, w, make_fiber(q.eps, q.tau, std::conj(q.z)), comps[k]);
      const double sd = symmetry_defect(m, mb), mi = im_part_min_eig(m);
      c.a = std::max(c.a, sd);
      c.b = std::min(c.b, mi);
      c.rows.push_back({ename(p), fmt(q.eps), fmt(q.tau), zre(q.z), zim(q.z), names[k], fmt(sd), fmt(mi)});
    }
    return c;
  });
  const int bad = collect(r, cells);
  double sym = 0, mi = INFINITY;
  for (const auto& c : cells)
    if (c.ok) sym = std::max(sym, c.a), mi = std::min(mi, c.b);
  r.pass = bad == 0 && sym <= 1e-12 && mi >= -1e-10;
  r.summary.push_back("max symmetry defect " + fmt(sym) + " (bound 1e-12); min eigenvalue of Im M " + fmt(mi) +
                      " (bound -1e-10)");
  return r;
}

// ---- 3
// sampled Krein kernel with the lumped quadrature of the grid
CMat krein_matrix(const TripleFrame& fr, const DiscretizedOperator& op, cplx z) {
  const CMat minv = fr.m(z).inverse();
  struct Pos {
    int e;
    double x;
    cplx w;
  };
  const int n = op.size();
  std::vector<Pos> row(n);
  std::vector<std::vector<Pos>> col(n);
  for (int k = 0; k < n; ++k) {
    const NodeRef& nd = op.nodes[k];
    if (nd.vertex < 0) {
      row[k] = {nd.edge, nd.x, 1.0};
      col[k] = {{nd.edge, nd.x, op.mass(k)}};
      continue;
    }
    bool first = true;
    for (int i = 0; i < op.graph.num_edges(); ++i) {
      const EdgeSpec& e = op.graph.edges[i];
      for (int end = 0; end < 2; ++end) {
        if ((end == 0 ? e.left : e.right) != nd.vertex) continue;
        const double x = end == 0 ? 0.0 : e.length;
        const cplx w = op.weights.at(nd.vertex, i);
        if (first) row[k] = {i, x, w}, first = false;
        col[k].push_back({i, x, std::conj(w) * 0.5 * op.h[i]});
      }
    }
  }
  CMat r(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx s = 0;
      for (const Pos& c : col[b]) s += krein_kernel(fr, z, minv, row[a].e, row[a].x, c.e, c.x) * c.w;
      r(a, b) = row[a].w * s;
    }
  return r;
}

Report krein_vs_direct(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "eps", "tau", "re_z", "im_z", "resolution", "h", "diff", "norm_R", "bound", "ratio"};
  std::vector<Point> pts = grid(s, true);
  const int nr = int(s.resolutions.size());
  auto cells = run_cells(int(pts.size()) * nr, [&](int i) {
    const Point& q = pts[i / nr];
    const int res = s.resolutions[i % nr];
    const ExampleParams& p = s.examples[q.ex];
    const TripleFrame fr = make_frame(p, q.tau, q.eps);
    const DiscretizedOperator op = assemble(fr.graph, fr.weights, make_fiber(q.eps, q.tau, q.z), res);
    const CMat rk = krein_matrix(fr, op, q.z);
    const CMat rd = resolvent_matrix(op, q.z);
    Cell c;
    c.a = operator_norm_diff(rk, rd, op.mass);
    c.b = operator_norm(rk, op.mass);
    c.c = 1.0 / res;
    return c;
  });
  const int bad = collect(r, cells);
  bool ok = bad == 0;
  double worst_ratio = INFINITY, best_ratio = 0, worst_margin = 0;
  for (size_t k = 0; k < pts.size(); ++k)
    for (int j = 0; j < nr; ++j) {
      const Cell& c = cells[k * nr + j];
      if (!c.ok) continue;
      const Point& q = pts[k];
      const double bound = 5 * c.c * c.c * c.b;
      double ratio = 0;
      if (j > 0 && cells[k * nr + j - 1].ok) {
        ratio = cells[k * nr + j - 1].a / c.a;
        worst_ratio = std::min(worst_ratio, ratio);
        best_ratio = std::max(best_ratio, ratio);
        if (ratio < 3.0 || ratio > 5.0) ok = false;
      }
      if (c.a > bound) ok = false;
      worst_margin = std::max(worst_margin, c.a / bound);
      r.table.rows.push_back({ename(s.examples[q.ex]), fmt(q.eps), fmt(q.tau), zre(q.z), zim(q.z),
                              std::to_string(s.resolutions[j]), fmt(c.c), fmt(c.a), fmt(c.b), fmt(bound),
                              j > 0 ? fmt(ratio) : ""});
    }
  r.pass = ok;
  r.summary.push_back("max diff / (5 h^2 ||R||) = " + fmt(worst_margin) + "; reduction per halving in [" +
                      fmt(worst_ratio) + ", " + fmt(best_ratio) + "] (accepted [3, 5])");
  return r;
}

// ---- 4
CMat gram(const TripleFrame& fr, cplx z) {
  const int n = fr.dim();
  std::vector<GraphField> g(n);
  for (int m = 0; m < n; ++m) {
    CVec e = CVec::Zero(n);
    e(m) = 1;
    g[m] = fr.gamma(z, e);
  }
  CMat G(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) G(m, k) = inner(g[k], g[m]);
  return G;
}

CMat psd_sqrt(const CMat& g) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (g + g.adjoint()));
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0).cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

double largest_sv(const CMat& a) { return Eigen::JacobiSVD<CMat>(a).singularValues()(0); }

double gen_res_error(const ExampleParams& p, double tau, double eps, cplx z) {
  const TripleFrame sf = make_frame(p, tau, eps, Component::Soft);
  const TripleFrame st = make_frame(p, tau, eps, Component::Stiff);
  const CMat qe = (sf.m(z) + st.m(z)).inverse();
  const CMat qf = q_eff(p, tau, eps, z);
  return largest_sv(psd_sqrt(gram(sf, z)) * (qe - qf) * psd_sqrt(gram(sf, std::conj(z))));
}

// ---- 5
double full_res_error(const ExampleParams& p, double tau, double eps, cplx z, int modes) {
  const TripleFrame full = make_frame(p, tau, eps, Component::Full);
  const TripleFrame soft = make_frame(p, tau, eps, Component::Soft);
  const PsiEmbedding psi = psi_embedding(p, tau, eps);
  // off this span the difference is the stiff Dirichlet part on modes above `modes`, O(eps^2 / modes^2)
  std::vector<GraphField> span;
  for (cplx w : {z, std::conj(z)})
    for (int m = 0; m < soft.dim(); ++m) {
      CVec e = CVec::Zero(soft.dim());
      e(m) = 1;
      span.push_back(soft.gamma(w, e));
    }
  for (int i : full.graph.stiff_edge_ids) {
    GraphField a = zero_field(full.graph), b = zero_field(full.graph);
    a.e[i].terms = {{1.0, cplx(0, -tau), 0}};
    b.e[i].terms = {{1.0, cplx(0, -tau), 1}};
    span.push_back(a);
    span.push_back(b);
    for (int j = 1; j <= modes; ++j) span.push_back(sine_mode(full.graph, i, j, tau));
  }
  const int n = int(span.size());
  std::vector<GraphField> img;
  for (const auto& f : span) {
    const HomState x = psi.forward(f);
    const HomState h = a_hom_resolvent(p, tau, eps, z, x.u, x.beta);
    img.push_back(krein_resolvent(full, z, f) - psi.adjoint(h));
  }
  CMat G(n, n), A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      G(i, j) = inner(span[j], span[i]);
      A(i, j) = inner(img[j], span[i]);
    }
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (G + G.adjoint()));
  const RVec ev = es.eigenvalues();
  const double mx = ev.maxCoeff();
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (ev(k) > 1e-13 * mx) keep.push_back(k);
  CMat W(n, keep.size());
  for (size_t k = 0; k < keep.size(); ++k) W.col(k) = es.eigenvectors().col(keep[k]) / std::sqrt(ev(keep[k]));
  return largest_sv(W.adjoint() * A * W);
}

template <class F>
Report rate_experiment(const SweepSpec& s, const std::string& what, F&& err) {
  Report r;
  r.table.header = {"example", "tau", "re_z", "im_z", "eps", "error", "slope", "r2"};
  const auto pts = grid(s, false);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    std::vector<std::pair<double, double>> pr;
    for (double eps : s.epss) pr.push_back({eps, err(p, q.tau, eps, q.z)});
    const SlopeFit f = fit_slope(pr);
    Cell c;
    c.a = f.slope;
    c.b = f.r2;
    c.ok = true;
    for (auto [e, v] : pr)
      c.rows.push_back({ename(p), fmt(q.tau), zre(q.z), zim(q.z), fmt(e), fmt(v), fmt(f.slope), fmt(f.r2)});
    return c;
  });
  const int bad = collect(r, cells);
  std::vector<SlopeFit> fits;
  bool ok = bad == 0;
  for (const auto& c : cells) {
    if (!c.ok) continue;
    SlopeFit f;
    f.slope = c.a;
    f.r2 = c.b;
    fits.push_back(f);
    if (c.a < 1.8 || c.a > 2.2) ok = false;
  }
  r.pass = ok && s.taus.size() >= 8;
  r.summary.push_back(slope_line(what, fits) + " (accepted [1.8, 2.2]), " + std::to_string(s.taus.size()) +
                      " tau values per example");
  return r;
}

// ---- 6
Report btilde_identity(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "tau", "re_z", "im_z", "eps", "dev"};
  const auto pts = grid(s, true);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    const FiberParams f = make_fiber(q.eps, q.tau, q.z);
    const Mat2 a = b_tilde(p, f), b = b_tilde_closed(p, f);
    Cell c;
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) c.a = std::max(c.a, std::abs(a(m, n) - b(m, n)) / (1 + std::abs(b(m, n))));
    c.rows.push_back({ename(p), fmt(q.tau), zre(q.z), zim(q.z), fmt(q.eps), fmt(c.a)});
    return c;
  });
  const int bad = collect(r, cells);
  double worst = 0;
  for (const auto& c : cells)
    if (c.ok) worst = std::max(worst, c.a);
  r.pass = bad == 0 && worst <= 1e-12;
  r.summary.push_back("max |B~ - B~_closed| / (1 + |B~_closed|) = " + fmt(worst) + " over " +
                      std::to_string(pts.size()) + " points (bound 1e-12)");
  return r;
}

// ---- 7
Report beff_rate(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "tau", "re_z", "im_z", "eps", "beff_error", "delta_error", "slope_beff",
                    "slope_delta"};
  const auto pts = grid(s, false);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    std::vector<std::pair<double, double>> pb, pd;
    for (double eps : s.epss) {
      pb.push_back({eps, b_eff_error(p, make_fiber(eps, q.tau, q.z))});
      if (p.id == ExampleId::Ex1) {
        const cplx d = delta_fn(p, q.tau, eps, q.z), dl = delta_limit(p, q.tau, eps, q.z);
        pd.push_back({eps, std::abs(d - dl)});
      }
    }
    Cell c;
    const SlopeFit fb = fit_slope(pb);
    c.a = fb.slope;
    c.b = pd.empty() ? 2.0 : fit_slope(pd).slope;
    for (size_t k = 0; k < pb.size(); ++k)
      c.rows.push_back({ename(p), fmt(q.tau), zre(q.z), zim(q.z), fmt(pb[k].first), fmt(pb[k].second),
                        pd.empty() ? "" : fmt(pd[k].second), fmt(c.a), pd.empty() ? "" : fmt(c.b)});
    return c;
  });
  const int bad = collect(r, cells);
  bool ok = bad == 0;
  std::vector<SlopeFit> fb, fd;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].ok) continue;
    SlopeFit a;
    a.slope = cells[i].a;
    a.r2 = 1;
    fb.push_back(a);
    if (s.examples[pts[i].ex].id == ExampleId::Ex1) {
      SlopeFit d;
      d.slope = cells[i].b;
      d.r2 = 1;
      fd.push_back(d);
    }
    if (cells[i].a < 1.8 || cells[i].a > 2.2 || cells[i].b < 1.8 || cells[i].b > 2.2) ok = false;
  }
  r.pass = ok;
  r.summary.push_back(slope_line("||B~ - B~_eff||", fb) + " (accepted [1.8, 2.2])");
  if (!fd.empty()) r.summary.push_back(slope_line("|delta - delta_lim| (Ex1)", fd));
  return r;
}

// ---- 8
Report dispersion_series(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "tau", "re_z", "im_z", "K_closed_re", "K_closed_im", "K_series_re", "K_series_im",
                    "J", "rel_error", "order"};
  const auto pts = grid(s, false);
  const double eps = s.epss.empty() ? 1.0 : s.epss.front();
  const int j1 = std::max(10, s.J / 10);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    const cplx kc = k_closed(p, q.tau, q.z, eps);
    const cplx ks = k_series(p, q.tau, q.z, s.J, eps);
    const double e1 = std::abs(k_series(p, q.tau, q.z, j1, eps) - kc);
    const double e2 = std::abs(k_series(p, q.tau, q.z, 2 * j1, eps) - kc);
    Cell c;
    c.a = std::abs(ks - kc) / std::abs(kc);
    c.b = std::log2(e1 / e2);
    c.rows.push_back({ename(p), fmt(q.tau), zre(q.z), zim(q.z), fmt(kc.real()), fmt(kc.imag()), fmt(ks.real()),
                      fmt(ks.imag()), std::to_string(s.J), fmt(c.a), fmt(c.b)});
    return c;
  });
  const int bad = collect(r, cells);
  double worst = 0, olo = INFINITY, ohi = -INFINITY;
  std::vector<int> count(s.examples.size(), 0);
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].ok) continue;
    ++count[pts[i].ex];
    worst = std::max(worst, cells[i].a);
    olo = std::min(olo, cells[i].b);
    ohi = std::max(ohi, cells[i].b);
  }
  const int minc = count.empty() ? 0 : *std::min_element(count.begin(), count.end());
  r.pass = bad == 0 && worst <= 1e-3 && olo >= 0.5 && ohi <= 2.0 && minc >= 50;
  r.summary.push_back("max relative |K_series(J=" + std::to_string(s.J) + ") - K_closed| = " + fmt(worst) +
                      " (bound 1e-3), " + std::to_string(minc) + " points per example");
  r.summary.push_back("tail order from J=" + std::to_string(j1) + " to " + std::to_string(2 * j1) + " in [" + fmt(olo) +
                      ", " + fmt(ohi) + "] (1/J within factor 2: [0.5, 2])");
  return r;
}

// ---- 9
Report sum_identities(const SweepSpec& s) {
  Report r;
  r.table.header = {"x", "J", "identity", "lhs", "rhs", "error"};
  double worst = 0;
  for (double x : s.taus) {
    const auto v = verify_sum_identities(x, s.J);
    for (int k = 0; k < 2; ++k) {
      worst = std::max(worst, v[k].error);
      r.table.rows.push_back({fmt(x), std::to_string(s.J), k ? "alternating" : "plain", fmt(v[k].lhs), fmt(v[k].rhs),
                              fmt(v[k].error)});
    }
  }
  r.pass = worst <= 2e-6 && !s.taus.empty();
  r.summary.push_back("max |partial sum - closed form| = " + fmt(worst) + " at J = " + std::to_string(s.J) +
                      " (bound 2e-6)");
  return r;
}

// ---- 10
Report schur_check(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "eps", "tau", "re_z", "im_z", "schur_re", "schur_im", "dev"};
  const auto pts = grid(s, true);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    const cplx sf = schur_frobenius(p, q.tau, q.eps, q.z);
    const cplx kc = k_closed(p, q.tau, q.z, q.eps);
    Cell c;
    c.a = std::abs(sf * (kc - q.z) - 1.0);
    c.b = sf.imag();
    c.rows.push_back({ename(p), fmt(q.eps), fmt(q.tau), zre(q.z), zim(q.z), fmt(sf.real()), fmt(sf.imag()), fmt(c.a)});
    return c;
  });
  const int bad = collect(r, cells);
  double worst = 0, im = INFINITY;
  for (const auto& c : cells)
    if (c.ok) worst = std::max(worst, c.a), im = std::min(im, c.b);
  r.pass = bad == 0 && worst <= 1e-9 && im > -1e-12;
  r.summary.push_back("max |S (K - z) - 1| = " + fmt(worst) + " (bound 1e-9); min Im S = " + fmt(im));
  return r;
}

// ---- 11
double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (double x : a) {
    double m = INFINITY;
    for (double y : b) m = std::min(m, std::abs(x - y));
    d = std::max(d, m);
  }
  for (double y : b) {
    double m = INFINITY;
    for (double x : a) m = std::min(m, std::abs(x - y));
    d = std::max(d, m);
  }
  return d;
}

std::vector<double> lowest_hom(const ExampleParams& p, double tau, int count) {
  for (double zmax = 400;; zmax *= 2) {
    std::vector<double> h = hom_spectrum(p, tau, zmax);
    if (int(h.size()) >= count) return {h.begin(), h.begin() + count};
    if (zmax > 1e5) throw SingularError("too few homogenised eigenvalues");
  }
}

Report bands(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "tau", "eps", "lambda1", "lambda2", "lambda3", "hom1", "hom2", "hom3", "hausdorff",
                    "slope"};
  struct Task {
    int ex;
    double tau;
  };
  std::vector<Task> tasks;
  for (int e = 0; e < int(s.examples.size()); ++e)
    for (double t : s.taus) tasks.push_back({e, t});
  auto cells = run_cells(int(tasks.size()), [&](int i) {
    const ExampleParams& p = s.examples[tasks[i].ex];
    const double tau = tasks[i].tau;
    const std::vector<double> h = lowest_hom(p, tau, 3);
    std::vector<std::pair<double, double>> pr;
    std::vector<std::vector<double>> evs;
    for (double eps : s.epss) {
      evs.push_back(exact_eigenvalues(make_frame(p, tau, eps), 3));
      pr.push_back({eps, hausdorff(evs.back(), h)});
    }
    const SlopeFit f = fit_slope(pr, 1.7, 2.3);
    Cell c;
    c.a = f.slope;
    for (size_t k = 0; k < pr.size(); ++k)
      c.rows.push_back({ename(p), fmt(tau), fmt(pr[k].first), fmt(evs[k][0]), fmt(evs[k][1]), fmt(evs[k][2]), fmt(h[0]),
                        fmt(h[1]), fmt(h[2]), fmt(pr[k].second), fmt(f.slope)});
    return c;
  });
  const int bad = collect(r, cells);
  bool ok = bad == 0;
  std::vector<SlopeFit> fits;
  for (const auto& c : cells) {
    if (!c.ok) continue;
    SlopeFit f;
    f.slope = c.a;
    f.r2 = 1;
    fits.push_back(f);
    if (c.a < 1.7 || c.a > 2.3) ok = false;
  }
  r.summary.push_back(slope_line("Hausdorff distance of lowest 3 eigenvalues", fits) + " (accepted [1.7, 2.3])");

  // the eigenvalue oracle above is the exact Krein counting route; check it against
  // Richardson-extrapolated finite differences at the two coarsest eps
  if (s.resolutions.size() >= 2 && s.epss.size() >= 2) {
    std::vector<Point> vp;
    for (int e = 0; e < int(s.examples.size()); ++e)
      for (double t : {0.0, 1.0, -kPi + 1e-3})
        for (int k = 0; k < 2; ++k) vp.push_back({e, t, s.epss[k], 0.0});
    const int r1 = s.resolutions[0], r2 = s.resolutions[1];
    auto vc = run_cells(int(vp.size()), [&](int i) {
      const Point& q = vp[i];
      const ExampleParams& p = s.examples[q.ex];
      const TripleFrame fr = make_frame(p, q.tau, q.eps);
      const auto ex = exact_eigenvalues(fr, 3);
      const auto a = eigenvalues(assemble(fr.graph, fr.weights, make_fiber(q.eps, q.tau, 0.0), r1), 3);
      const auto b = eigenvalues(assemble(fr.graph, fr.weights, make_fiber(q.eps, q.tau, 0.0), r2), 3);
      const double q2 = double(r2) / r1;
      Cell c;
      for (int k = 0; k < 3; ++k) {
        const double rich = (q2 * q2 * b[k] - a[k]) / (q2 * q2 - 1);
        c.a = std::max(c.a, std::abs(rich - ex[k]) / (1 + ex[k]));
      }
      return c;
    });
    double dev = 0;
    for (const auto& c : vc) {
      if (!c.ok) ok = false;
      dev = std::max(dev, c.a);
    }
    if (dev > 1e-6) ok = false;
    r.summary.push_back("FD (res " + std::to_string(r1) + "/" + std::to_string(r2) +
                        ", Richardson) vs exact eigenvalues: max relative deviation " + fmt(dev) + " (bound 1e-6)");
  }
  r.pass = ok;
  return r;
}

// ---- 12
GraphField test_field(const MetricGraph& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  GraphField f = zero_field(g);
  for (int i : g.soft_edge_ids)
    f.e[i].terms = {{cplx(u(rng), u(rng)), 0.0, 0},
                    {cplx(u(rng), u(rng)), cplx(0, 2 * kPi * u(rng)), 1},
                    {cplx(u(rng), u(rng)), cplx(0.5 * u(rng), 3 * u(rng)), 0}};
  return f;
}

double hnorm(const HomState& x) { return std::sqrt(std::abs(inner(x, x))); }

HomState scaled(cplx s, const HomState& x) { return {s * x.u, s * x.beta}; }

Report dilation(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "eps", "tau", "re_z", "im_z", "resolvent_identity", "adjoint_symmetry", "herglotz_hom",
                    "herglotz_dilation", "herglotz_reff", "dilation_vs_hom"};
  const auto pts = grid(s, true);
  auto cells = run_cells(int(pts.size()), [&](int i) {
    const Point& q = pts[i];
    const ExampleParams& p = s.examples[q.ex];
    const MetricGraph g = build_example(p);
    std::mt19937 rng(1234u + unsigned(i));
    std::uniform_real_distribution<double> u(-1, 1);
    const HomState x{test_field(g, rng), cplx(u(rng), u(rng))};
    const HomState y{test_field(g, rng), cplx(u(rng), u(rng))};
    const cplx z = q.z, w = cplx(-1.5, 0.8) + 0.5 * z;
    auto hom = [&](cplx zz, const HomState& v) { return a_hom_resolvent(p, q.tau, q.eps, zz, v.u, v.beta); };
    const DilationBlocks dz = strauss_dilation_resolvent(p, q.tau, q.eps, z);
    const DilationBlocks dw = strauss_dilation_resolvent(p, q.tau, q.eps, w);
    const DilationBlocks dzb = strauss_dilation_resolvent(p, q.tau, q.eps, std::conj(z));

    // R(z) - R(w) = (z - w) R(z) R(w)
    const HomState rz = dz.apply(x), rw = dw.apply(x);
    const HomState lhs = rz - rw, rhs = scaled(z - w, dz.apply(rw));
    const double nx = hnorm(x), ny = hnorm(y);
    Cell c;
    c.a = hnorm(lhs - rhs) / (nx * (hnorm(rz) / nx + hnorm(rw) / nx + 1e-300));
    c.b = std::abs(inner(rz, y) - inner(x, dzb.apply(y))) / (nx * ny);
    // Im <R x, x> = Im z ||R x||^2 >= 0 for a self-adjoint resolvent
    const HomState hz = hom(z, x);
    const double h1 = inner(hz, x).imag(), h1x = z.imag() * std::pow(hnorm(hz), 2);
    const double h2 = inner(rz, x).imag();
    const GraphField re = r_eff(p, q.tau, q.eps, z, x.u);
    const double h3 = inner(re, x.u).imag();
    c.c = std::min({h1, h2, h3}) / (nx * nx);
    c.d = std::max(std::abs(h1 - h1x) / (nx * nx), hnorm(hz - rz) / nx);
    c.rows.push_back({ename(p), fmt(q.eps), fmt(q.tau), zre(z), zim(z), fmt(c.a), fmt(c.b), fmt(h1 / (nx * nx)),
                      fmt(h2 / (nx * nx)), fmt(h3 / (nx * nx)), fmt(hnorm(hz - rz) / nx)});
    return c;
  });
  const int bad = collect(r, cells);
  double ri = 0, adj = 0, herg = INFINITY, cons = 0;
  for (const auto& c : cells)
    if (c.ok) ri = std::max(ri, c.a), adj = std::max(adj, c.b), herg = std::min(herg, c.c), cons = std::max(cons, c.d);
  r.pass = bad == 0 && ri <= 1e-9 && adj <= 1e-10 && herg >= 0 && cons <= 1e-9;
  r.summary.push_back("resolvent identity residual " + fmt(ri) + " (bound 1e-9); adjoint symmetry " + fmt(adj) +
                      " (bound 1e-10)");
  r.summary.push_back("min Im<R x, x>/|x|^2 over homogenised, dilated and generalised resolvents " + fmt(herg) +
                      " (must be >= 0); hom vs dilation and Im-part consistency " + fmt(cons));
  return r;
}

// ---- 13
Report line_models(const SweepSpec& s) {
  Report r;
  r.table.header = {"example", "eps", "re_z", "im_z", "symbol_residual", "opposite_sign_residual", "roundtrip",
                    "ex1_rel_diff", "slope"};
  const LineField F = line_field(s.line_X, s.line_n, [](double x) { return cplx(std::exp(-x * x), 0); });
  struct Task {
    int ex;
    cplx z;
    double eps;
  };
  std::vector<Task> tasks;
  for (int e = 0; e < int(s.examples.size()); ++e)
    for (cplx z : s.zs) {
      if (s.examples[e].id == ExampleId::Ex1) {
        tasks.push_back({e, z, 0.0});
      } else {
        for (double eps : s.epss) tasks.push_back({e, z, eps});
      }
    }
  auto cells = run_cells(int(tasks.size()), [&](int i) {
    const Task& t = tasks[i];
    const ExampleParams& p = s.examples[t.ex];
    Cell c;
    if (p.id == ExampleId::Ex1) {
      const LineField ud = solve_differential_model_ex1(p, t.z, F, ex1_sigma2(p));
      std::vector<std::pair<double, double>> pr;
      for (double eps : s.epss) {
        const LineField u = psi_k_apply(p, eps, t.z, F);
        pr.push_back({eps, (u.f - ud.f).norm() / ud.f.norm()});
      }
      const SlopeFit f = fit_slope(pr);
      c.c = f.slope;
      for (auto [e, v] : pr)
        c.rows.push_back({ename(p), fmt(e), zre(t.z), zim(t.z), "", "", "", fmt(v), fmt(f.slope)});
      return c;
    }
    const EffectiveLineModel m = difference_model(p, t.eps, t.z);
    double res = 0, opp = 0;
    for (int k = 0; k < F.size(); ++k) {
      const double tt = F.t(k);
      if (t.eps * tt < -kPi || t.eps * tt >= kPi) continue;
      const cplx a = m.symbol(tt), b = dispersion_symbol(p, t.eps, t.z, tt);
      res = std::max(res, std::abs(a - b) / (1 + std::abs(b)));
      opp = std::max(opp, std::abs(a + b) / (1 + std::abs(b)));
    }
    LineDiagnostics dg;
    const LineField u = psi_k_apply(p, t.eps, t.z, F, &dg);
    const LineField back = apply_symbol(m, u);
    c.a = res;
    c.b = (back.f - F.f).norm() / F.f.norm();
    c.c = 2.0;
    c.rows.push_back({ename(p), fmt(t.eps), zre(t.z), zim(t.z), fmt(res), fmt(opp), fmt(c.b), "", ""});
    return c;
  });
  const int bad = collect(r, cells);
  double res = 0, rt = 0, slo = INFINITY, shi = -INFINITY;
  bool any_ex1 = false;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].ok) continue;
    res = std::max(res, cells[i].a);
    rt = std::max(rt, cells[i].b);
    if (s.examples[tasks[i].ex].id == ExampleId::Ex1) {
      any_ex1 = true;
      slo = std::min(slo, cells[i].c);
      shi = std::max(shi, cells[i].c);
    }
  }
  const double pd = parseval_defect(F);
  r.pass = bad == 0 && res <= 1e-10 && rt <= 1e-8 && pd <= 1e-10 && (!any_ex1 || (slo >= 1.8 && shi <= 2.2));
  r.summary.push_back("difference-model symbol vs L(K(eps t, z) - z): max residual " + fmt(res) +
                      " (bound 1e-10); round trip " + fmt(rt) + "; Parseval defect " + fmt(pd));
  if (any_ex1)
    r.summary.push_back("Ex1 differential model vs Psi_K: slopes in [" + fmt(slo) + ", " + fmt(shi) +
                        "] (accepted [1.8, 2.2])");
  return r;
}

}  // namespace

Report run_experiment(const SweepSpec& spec) {
  validate(spec);
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  const std::string& t = spec.tag;
  if (t == "additivity") r = additivity(spec);
  else if (t == "herglotz") r = herglotz(spec);
  else if (t == "krein_vs_direct") r = krein_vs_direct(spec);
  else if (t == "gen_res_rate")
    r = rate_experiment(spec, "||R_eps - R_eff||", [](const ExampleParams& p, double tau, double eps, cplx z) {
      return gen_res_error(p, tau, eps, z);
    });
  else if (t == "full_res_rate")
    r = rate_experiment(spec, "||R(A_eps) - Psi^* R(A_hom) Psi||",
                        [&](const ExampleParams& p, double tau, double eps, cplx z) {
                          return full_res_error(p, tau, eps, z, spec.modes);
                        });
  else if (t == "btilde_identity") r = btilde_identity(spec);
  else if (t == "beff_rate") r = beff_rate(spec);
  else if (t == "dispersion_series") r = dispersion_series(spec);
  else if (t == "sum_identities") r = sum_identities(spec);
  else if (t == "schur_check") r = schur_check(spec);
  else if (t == "bands") r = bands(spec);
  else if (t == "dilation") r = dilation(spec);
  else if (t == "line_models") r = line_models(spec);
  r.tag = t;
  r.criterion = criterion_of(t);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.point_errors) r.summary.push_back(std::to_string(r.point_errors) + " grid points raised errors");
  return r;
}

}  // namespace qgh
