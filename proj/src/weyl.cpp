#include "qgh/weyl.hpp"

#include <cmath>
#include <sstream>

namespace qgh {

cplx sqrt_upper(cplx z) {
  cplx k = std::sqrt(z);
  if (k.imag() < 0 || (k.imag() == 0 && k.real() < 0)) k = -k;
  return k;
}

FiberParams make_fiber(double epsilon, double tau, cplx z) {
  if (!(epsilon > 0)) throw ParamError("epsilon must be positive");
  check_tau(tau);
  return {epsilon, tau, z, sqrt_upper(z)};
}

double edge_speed(const EdgeSpec& e, double epsilon) {
  return e.stiffness == Stiffness::Stiff ? e.speed_a / epsilon : e.speed_a;
}

static void pole_guard(cplx x, bool allow_zero) {
  const double n = std::round(x.real() / kPi);
  if (allow_zero && n == 0) return;
  if (std::abs(x - n * kPi) < 1e-8) {
    std::ostringstream os;
    os << "cot/csc argument " << x << " too close to " << n << "*pi";
    throw PoleError(os.str());
  }
}

TrigPair cot_csc(cplx x) {
  pole_guard(x, false);
  if (std::abs(x.imag()) < 20) {
    const cplx s = std::sin(x);
    return {std::cos(x) / s, 1.0 / s};
  }
  if (x.imag() > 0) {
    const cplx e = std::exp(kI * x), q = e * e;
    return {kI * (q + 1.0) / (q - 1.0), 2.0 * kI * e / (q - 1.0)};
  }
  const cplx e = std::exp(-kI * x), q = e * e;
  return {kI * (1.0 + q) / (1.0 - q), 2.0 * kI * e / (1.0 - q)};
}

cplx kcot(cplx kappa, double l) {
  const cplx x = kappa * l;
  if (std::abs(x) < 1e-3) {
    const cplx x2 = x * x;
    return (1.0 - x2 / 3.0 - x2 * x2 / 45.0) / l;
  }
  return kappa * cot_csc(x).cot;
}

cplx kcsc(cplx kappa, double l) {
  const cplx x = kappa * l;
  if (std::abs(x) < 1e-3) {
    const cplx x2 = x * x;
    return (1.0 + x2 / 6.0 + 7.0 * x2 * x2 / 360.0) / l;
  }
  return kappa * cot_csc(x).csc;
}

bool in_component(const EdgeSpec& e, Component c) {
  if (c == Component::Full) return true;
  return (c == Component::Stiff) == (e.stiffness == Stiffness::Stiff);
}

CMat m_general(const MetricGraph& g, const DattaWeights& w, const FiberParams& f, Component comp) {
  const int n = g.num_vertices();
  CMat m = CMat::Zero(n, n);
  for (int i = 0; i < g.num_edges(); ++i) {
    const EdgeSpec& e = g.edges[i];
    if (!in_component(e, comp)) continue;
    const double c = edge_speed(e, f.epsilon);
    const cplx kappa = f.k / c;
    const cplx dcot = c * c * kcot(kappa, e.length);
    const cplx dcsc = c * c * kcsc(kappa, e.length);
    const int p = e.left, q = e.right;
    const cplx ph = std::exp(kI * f.tau * e.length);
    m(p, p) -= dcot;
    m(q, q) -= dcot;
    m(p, q) += w.at(p, i) * std::conj(w.at(q, i)) * ph * dcsc;
    m(q, p) += w.at(q, i) * std::conj(w.at(p, i)) * std::conj(ph) * dcsc;
  }
  return m;
}

namespace {

// block of one edge of speed a (already divided by eps if stiff) written out
struct EdgeBlock {
  cplx dg, off;  // -a k cot(k l / a), a k csc(k l / a)
};

EdgeBlock edge_block(cplx k, double l, double a) {
  const TrigPair t = cot_csc(k * l / a);
  return {-a * k * t.cot, a * k * t.csc};
}

}  // namespace

MMatrixSet m_blocks_closed(const ExampleParams& p, const FiberParams& f) {
  const double eps = f.epsilon, tau = f.tau;
  const cplx k = f.k;
  auto ph = [&](double s) { return std::exp(kI * tau * s); };
  MMatrixSet s;
  s.fiber = f;
  s.m_stiff.setZero();
  s.m_soft.setZero();
  switch (p.id) {
    case ExampleId::Ex0: {
      const EdgeBlock b1 = edge_block(k, p.l1, p.a1 / eps), b2 = edge_block(k, p.l2, 1.0);
      s.m_stiff << b1.dg, ph(-p.l1) * b1.off, ph(p.l1) * b1.off, b1.dg;
      s.m_soft << b2.dg, ph(p.l2) * b2.off, ph(-p.l2) * b2.off, b2.dg;
      break;
    }
    case ExampleId::Ex1: {
      const EdgeBlock b1 = edge_block(k, p.l1, p.a1 / eps), b2 = edge_block(k, p.l2, 1.0),
                      b3 = edge_block(k, p.l3, p.a3 / eps);
      const cplx s21 = ph(p.l1 + p.l3) * b1.off + ph(-p.l2) * b3.off;
      const cplx s12 = ph(-p.l1 - p.l3) * b1.off + ph(p.l2) * b3.off;
      s.m_stiff << b1.dg + b3.dg, s12, s21, b1.dg + b3.dg;
      s.m_soft << b2.dg, ph(p.l2) * b2.off, ph(-p.l2) * b2.off, b2.dg;
      break;
    }
    case ExampleId::Ex2: {
      const EdgeBlock b1 = edge_block(k, p.l1, p.a1), b2 = edge_block(k, p.l2, p.a2),
                      b3 = edge_block(k, p.l3, p.a3 / eps);
      s.m_stiff << b3.dg, ph(p.l2) * b3.off, ph(-p.l2) * b3.off, b3.dg;
      const cplx f21 = ph(p.l1 + p.l3) * b1.off + ph(-p.l2) * b2.off;
      const cplx f12 = ph(-p.l1 - p.l3) * b1.off + ph(p.l2) * b2.off;
      s.m_soft << b1.dg + b2.dg, f12, f21, b1.dg + b2.dg;
      break;
    }
  }
  s.m_full = s.m_stiff + s.m_soft;
  return s;
}

double check_additivity(const MMatrixSet& s) {
  double d = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      d = std::max(d, std::abs(s.m_full(i, j) - s.m_stiff(i, j) - s.m_soft(i, j)) / (1 + std::abs(s.m_full(i, j))));
  return d;
}

double symmetry_defect(const CMat& m_z, const CMat& m_zbar) {
  double d = 0;
  for (int i = 0; i < m_z.rows(); ++i)
    for (int j = 0; j < m_z.cols(); ++j)
      d = std::max(d, std::abs(m_zbar(i, j) - std::conj(m_z(j, i))) / (1 + std::abs(m_z(j, i))));
  return d;
}

double im_part_min_eig(const CMat& m) {
  const CMat h = (m - m.adjoint()) / (2.0 * kI);
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace qgh
