#include "qgh/direct.hpp"

#include <cmath>
#include <random>

namespace qgh {

DiscretizedOperator assemble(const MetricGraph& g, const DattaWeights& w, const FiberParams& f, int resolution) {
  if (resolution < 16) throw ParamError("resolution must be at least 16");
  DiscretizedOperator op;
  op.graph = g, op.weights = w, op.fiber = f, op.resolution = resolution;
  const double tau = w.tau;
  int pos = 0;
  for (int i = 0; i < g.num_edges(); ++i) {
    const int n = std::max(2, int(std::lround(resolution * g.edges[i].length)));
    op.intervals.push_back(n);
    op.h.push_back(g.edges[i].length / n);
    op.offset.push_back(pos);
    for (int j = 1; j < n; ++j) op.nodes.push_back({i, j * op.h.back(), -1});
    pos += n - 1;
  }
  op.vertex_offset = pos;
  for (int v = 0; v < g.num_vertices(); ++v) op.nodes.push_back({-1, 0, v});
  const int N = op.size();
  op.L = CMat::Zero(N, N);
  op.mass = RVec::Zero(N);
  for (int i = 0; i < g.num_edges(); ++i) {
    const EdgeSpec& e = g.edges[i];
    const double c = edge_speed(e, f.epsilon), h = op.h[i];
    const double s = c * c / h;
    const cplx fwd = std::exp(kI * tau * h);
    const int n = op.intervals[i], o = op.offset[i];
    const int p = op.vertex_offset + e.left, q = op.vertex_offset + e.right;
    // index of grid point j = 0..n
    auto idx = [&](int j) { return j == 0 ? p : (j == n ? q : o + j - 1); };
    auto coef = [&](int j) -> cplx {  // u_j = coef * unknown
      if (j == 0) return std::conj(w.at(e.left, i));
      if (j == n) return std::conj(w.at(e.right, i));
      return 1.0;
    };
    // energy sum over cells (c^2/h) |e^{i tau h} u_{j+1} - u_j|^2
    for (int j = 0; j < n; ++j) {
      const int a = idx(j), b = idx(j + 1);
      const cplx ca = coef(j), cb = coef(j + 1);
      op.L(a, a) += s * std::norm(ca);
      op.L(b, b) += s * std::norm(cb);
      op.L(a, b) -= s * std::conj(ca) * fwd * cb;
      op.L(b, a) -= s * std::conj(cb) * std::conj(fwd) * ca;
    }
    for (int j = 1; j < n; ++j) op.mass(o + j - 1) = h;
    op.mass(p) += 0.5 * h;
    op.mass(q) += 0.5 * h;
  }
  return op;
}

CVec sample(const DiscretizedOperator& op, const GraphField& u) {
  CVec v(op.size());
  std::vector<int> cnt(op.graph.num_vertices(), 0);
  for (int k = 0; k < op.vertex_offset; ++k) v(k) = u.e[op.nodes[k].edge](op.nodes[k].x);
  v.tail(op.graph.num_vertices()).setZero();
  for (int i = 0; i < op.graph.num_edges(); ++i) {
    const EdgeSpec& e = op.graph.edges[i];
    v(op.vertex_offset + e.left) += op.weights.at(e.left, i) * u.e[i](0.0);
    v(op.vertex_offset + e.right) += op.weights.at(e.right, i) * u.e[i](e.length);
    ++cnt[e.left], ++cnt[e.right];
  }
  for (int j = 0; j < op.graph.num_vertices(); ++j) v(op.vertex_offset + j) /= double(std::max(1, cnt[j]));
  return v;
}

namespace {

Eigen::PartialPivLU<CMat> factor(const DiscretizedOperator& op, cplx z) {
  CMat a = op.L;
  a.diagonal() -= z * op.mass.cast<cplx>();
  Eigen::PartialPivLU<CMat> lu(a);
  if (!(lu.rcond() > 1e-13)) throw SingularError("z is at a discrete eigenvalue");
  return lu;
}

}  // namespace

CVec resolvent_apply(const DiscretizedOperator& op, cplx z, const CVec& f) {
  if (f.size() != op.size()) throw ParamError("forcing has the wrong size");
  const CVec rhs = op.mass.cast<cplx>().cwiseProduct(f);
  if (rhs.norm() == 0) return CVec::Zero(op.size());
  auto lu = factor(op, z);
  CVec u = lu.solve(rhs);
  // (A - z) u = f in the M-weighted sense
  CVec res = op.L * u - z * op.mass.cast<cplx>().cwiseProduct(u) - rhs;
  const double scale = (op.L.cwiseAbs().rowwise().sum().maxCoeff() + std::abs(z) * op.mass.maxCoeff()) * u.norm();
  if (res.norm() > 1e-10 * std::max(scale, rhs.norm())) {
    u += lu.solve(res * -1.0);
  }
  return u;
}

CMat resolvent_matrix(const DiscretizedOperator& op, cplx z) {
  auto lu = factor(op, z);
  return lu.solve(CMat(op.mass.cast<cplx>().asDiagonal()));
}

std::vector<double> eigenvalues(const DiscretizedOperator& op, int count) {
  if (count < 1) throw ParamError("count must be positive");
  const RVec is = op.mass.cwiseSqrt().cwiseInverse();
  const CMat s = is.asDiagonal() * op.L * is.asDiagonal();
  Eigen::SelfAdjointEigenSolver<CMat> es(s);
  const double nrm = es.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<double> out;
  for (int j = 0; j < std::min<int>(count, s.rows()); ++j) {
    const CVec v = es.eigenvectors().col(j);
    const double r = (s * v - es.eigenvalues()(j) * v).norm();
    if (r > 1e-8 * std::max(1.0, nrm)) throw SingularError("eigenpair residual too large");
    out.push_back(es.eigenvalues()(j));
  }
  return out;
}

double symmetry_defect(const DiscretizedOperator& op, int pairs, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  const RVec is = op.mass.cwiseInverse();
  const double an = op.L.cwiseAbs().rowwise().sum().maxCoeff() * is.maxCoeff();
  double d = 0;
  for (int t = 0; t < pairs; ++t) {
    CVec u(op.size()), v(op.size());
    for (int k = 0; k < op.size(); ++k) u(k) = {nd(rng), nd(rng)}, v(k) = {nd(rng), nd(rng)};
    // A = M^{-1} L; <x, y> = y^* M x
    const CVec au = is.cwiseProduct(op.L * u), av = is.cwiseProduct(op.L * v);
    auto ip = [&](const CVec& x, const CVec& y) { return y.dot(op.mass.cast<cplx>().cwiseProduct(x)); };
    const double nu = std::sqrt(ip(u, u).real()), nv = std::sqrt(ip(v, v).real());
    d = std::max(d, std::abs(ip(au, v) - ip(u, av)) / (nu * nv * an));
  }
  return d;
}

SoftBlock sandwich_soft(const DiscretizedOperator& op, cplx z) {
  SoftBlock sb;
  RVec msoft = RVec::Zero(op.graph.num_vertices());
  for (int i = 0; i < op.graph.num_edges(); ++i) {
    const EdgeSpec& e = op.graph.edges[i];
    if (e.stiffness != Stiffness::Soft) continue;
    msoft(e.left) += 0.5 * op.h[i];
    msoft(e.right) += 0.5 * op.h[i];
    for (int j = 1; j < op.intervals[i]; ++j) sb.nodes.push_back(op.offset[i] + j - 1);
  }
  for (int v = 0; v < op.graph.num_vertices(); ++v)
    if (msoft(v) > 0) sb.nodes.push_back(op.vertex_offset + v);
  const int n = int(sb.nodes.size());
  sb.weights.resize(n);
  CMat ext = CMat::Zero(op.size(), n);
  for (int a = 0; a < n; ++a) {
    const int k = sb.nodes[a];
    const int v = op.nodes[k].vertex;
    sb.weights(a) = v >= 0 ? msoft(v) : op.mass(k);
    ext(k, a) = v >= 0 ? msoft(v) / op.mass(k) : 1.0;
  }
  auto lu = factor(op, z);
  const CMat u = lu.solve(op.mass.cast<cplx>().asDiagonal() * ext);
  sb.r.resize(n, n);
  for (int a = 0; a < n; ++a) sb.r.row(a) = u.row(sb.nodes[a]);
  return sb;
}

}  // namespace qgh
