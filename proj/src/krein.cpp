#include "qgh/krein.hpp"

#include <cmath>

namespace qgh {

namespace {

// sin(kappa s) / kappa, regular at kappa = 0
cplx sinc_k(cplx kappa, double s) {
  const cplx x = kappa * s;
  if (std::abs(x) < 1e-4) return s * (1.0 - x * x / 6.0);
  return std::sin(x) / kappa;
}

}  // namespace

EdgeField edge_lift(double l, double c, double tau, cplx z, cplx u0, cplx ul) {
  const cplx kappa = sqrt_upper(z) / c;
  const cplx wl = std::exp(kI * tau * l) * ul;
  const cplx a = u0, b = wl * kcsc(kappa, l) - u0 * kcot(kappa, l);
  EdgeField f{l, {}};
  if (kappa == 0.0) {
    f.terms = {{a, -kI * tau, 0}, {b, -kI * tau, 1}};
  } else {
    const cplx lp = -kI * tau + kI * kappa, lm = -kI * tau - kI * kappa;
    const cplx s = b / (2.0 * kI * kappa);
    f.terms = {{a / 2.0 + s, lp, 0}, {a / 2.0 - s, lm, 0}};
  }
  compress(f);
  return f;
}

cplx edge_lift_value(double l, double c, double tau, cplx z, cplx u0, cplx ul, double x) {
  const cplx kappa = sqrt_upper(z) / c;
  const cplx wl = std::exp(kI * tau * l) * ul;
  const cplx b = wl * kcsc(kappa, l) - u0 * kcot(kappa, l);
  return std::exp(-kI * tau * x) * (u0 * std::cos(kappa * x) + b * sinc_k(kappa, x));
}

cplx edge_green(double l, double c, double tau, cplx z, double x, double y) {
  const cplx kappa = sqrt_upper(z) / c;
  const double lo = std::min(x, y), hi = std::max(x, y);
  return std::exp(-kI * tau * (x - y)) * sinc_k(kappa, lo) * sinc_k(kappa, l - hi) * kcsc(kappa, l) / (c * c);
}

EdgeField edge_operator(const EdgeField& u, double c, double tau) {
  EdgeField r = d_tau(d_tau(u, tau), tau);
  return (-c * c) * r;
}

EdgeField edge_dirichlet(const EdgeField& f, double c, double tau, cplx z) {
  const double c2 = c * c;
  EdgeField up{f.length, {}};
  for (const auto& t : f.terms) {
    // q(x) e^{lam x} with e^{lam x}(d q - 2 c^2 mu q' - c^2 q'') = c x^p e^{lam x}
    const cplx mu = t.lam + kI * tau;
    const cplx d = -c2 * mu * mu - z;
    std::vector<cplx> q(t.p + 3, 0.0);
    if (std::abs(d) > 1e-13 * (c2 * std::norm(mu) + std::abs(z))) {
      for (int n = t.p; n >= 0; --n) {
        const cplx rhs = (n == t.p ? t.c : 0.0);
        q[n] = (rhs + 2.0 * c2 * mu * double(n + 1) * q[n + 1] + c2 * double((n + 2) * (n + 1)) * q[n + 2]) / d;
      }
    } else {
      if (std::abs(mu) < 1e-12) throw PoleError("double resonance in the Dirichlet solve");
      for (int n = t.p; n >= 0; --n) {
        const cplx rhs = (n == t.p ? t.c : 0.0);
        q[n + 1] = -(rhs + c2 * double((n + 2) * (n + 1)) * q[n + 2]) / (2.0 * c2 * mu * double(n + 1));
      }
    }
    for (int n = 0; n < int(q.size()); ++n)
      if (q[n] != 0.0) up.terms.push_back({q[n], t.lam, n});
  }
  compress(up);
  EdgeField h = edge_lift(f.length, c, tau, z, -up(0.0), -up(f.length));
  up += h;
  return up;
}

CVec TripleFrame::gamma0(const GraphField& u) const {
  CVec v = CVec::Zero(dim());
  Eigen::VectorXi cnt = Eigen::VectorXi::Zero(dim());
  for (int i = 0; i < graph.num_edges(); ++i) {
    if (!active(i)) continue;
    const EdgeSpec& e = graph.edges[i];
    v(e.left) += weights.at(e.left, i) * u.e[i](0.0);
    v(e.right) += weights.at(e.right, i) * u.e[i](e.length);
    ++cnt(e.left), ++cnt(e.right);
  }
  for (int j = 0; j < dim(); ++j)
    if (cnt(j) > 0) v(j) /= double(cnt(j));
  return v;
}

CVec TripleFrame::gamma1(const GraphField& u) const {
  CVec v = CVec::Zero(dim());
  for (int i = 0; i < graph.num_edges(); ++i) {
    if (!active(i)) continue;
    const EdgeSpec& e = graph.edges[i];
    const double c2 = speed(i) * speed(i);
    const EdgeField du = d_tau(u.e[i], weights.tau);
    v(e.left) += weights.at(e.left, i) * c2 * du(0.0);
    v(e.right) -= weights.at(e.right, i) * c2 * du(e.length);
  }
  return v;
}

GraphField TripleFrame::a_max(const GraphField& u) const {
  GraphField r = zero_field(graph);
  for (int i = 0; i < graph.num_edges(); ++i)
    if (active(i)) r.e[i] = edge_operator(u.e[i], speed(i), weights.tau);
  return r;
}

GraphField TripleFrame::restrict(const GraphField& u) const {
  GraphField r = u;
  for (int i = 0; i < graph.num_edges(); ++i)
    if (!active(i)) r.e[i].terms.clear();
  return r;
}

GraphField TripleFrame::gamma(cplx z, const CVec& data) const {
  GraphField r = zero_field(graph);
  for (int i = 0; i < graph.num_edges(); ++i) {
    if (!active(i)) continue;
    const EdgeSpec& e = graph.edges[i];
    const cplx u0 = std::conj(weights.at(e.left, i)) * data(e.left);
    const cplx ul = std::conj(weights.at(e.right, i)) * data(e.right);
    r.e[i] = edge_lift(e.length, speed(i), weights.tau, z, u0, ul);
  }
  return r;
}

GraphField TripleFrame::dirichlet_resolvent(cplx z, const GraphField& f) const {
  GraphField r = zero_field(graph);
  for (int i = 0; i < graph.num_edges(); ++i)
    if (active(i)) r.e[i] = edge_dirichlet(f.e[i], speed(i), weights.tau, z);
  return r;
}

CMat TripleFrame::m(cplx z) const { return m_general(graph, weights, make_fiber(epsilon, weights.tau, z), comp); }

TripleFrame make_frame(const ExampleParams& p, double tau, double epsilon, Component comp) {
  if (!(epsilon > 0)) throw ParamError("epsilon must be positive");
  return {build_example(p), datta_weights(p, tau), epsilon, comp};
}

GraphField bvp_resolvent(const TripleFrame& fr, cplx z, const CMat& c0, const CMat& c1, const GraphField& f) {
  GraphField u = fr.dirichlet_resolvent(z, f);
  const CMat sys = c0 + c1 * fr.m(z);
  Eigen::FullPivLU<CMat> lu(sys);
  if (lu.rank() < sys.rows() || lu.rcond() < 1e-14) throw SingularError("boundary system is singular");
  const CVec th = -lu.solve(c1 * fr.gamma1(u));
  return u + fr.gamma(z, th);
}

GraphField krein_resolvent(const TripleFrame& fr, cplx z, const GraphField& f) {
  const int n = fr.dim();
  return bvp_resolvent(fr, z, CMat::Zero(n, n), CMat::Identity(n, n), f);
}

GraphField generalized_resolvent(const TripleFrame& soft, cplx z, const CMat& b, const GraphField& f) {
  const int n = soft.dim();
  return bvp_resolvent(soft, z, -b, CMat::Identity(n, n), soft.restrict(f));
}

cplx krein_kernel(const TripleFrame& fr, cplx z, const CMat& minv, int e, double x, int f, double y) {
  const double tau = fr.weights.tau;
  const EdgeSpec& ee = fr.graph.edges[e];
  const EdgeSpec& ef = fr.graph.edges[f];
  const double ce = fr.speed(e), cf = fr.speed(f);
  cplx s = (e == f) ? edge_green(ee.length, ce, tau, z, x, y) : 0.0;
  // gamma_m(z) on e at x, gamma_n(conj z) on f at y
  cplx ge[2], gf[2];
  const int ends_e[2] = {ee.left, ee.right}, ends_f[2] = {ef.left, ef.right};
  for (int a = 0; a < 2; ++a) {
    ge[a] = edge_lift_value(ee.length, ce, tau, z, a == 0 ? std::conj(fr.weights.at(ee.left, e)) : 0.0,
                            a == 1 ? std::conj(fr.weights.at(ee.right, e)) : 0.0, x);
    gf[a] = edge_lift_value(ef.length, cf, tau, std::conj(z), a == 0 ? std::conj(fr.weights.at(ef.left, f)) : 0.0,
                            a == 1 ? std::conj(fr.weights.at(ef.right, f)) : 0.0, y);
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s -= ge[a] * minv(ends_e[a], ends_f[b]) * std::conj(gf[b]);
  return s;
}

namespace {

long count_below(const TripleFrame& fr, double lam) {
  long n = 0;
  for (int i = 0; i < fr.graph.num_edges(); ++i) {
    if (!fr.active(i) || lam <= 0) continue;
    n += long(std::floor(fr.graph.edges[i].length * std::sqrt(lam) / (kPi * fr.speed(i))));
  }
  const CMat m = fr.m(lam);
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  for (int j = 0; j < es.eigenvalues().size(); ++j) n += es.eigenvalues()(j) > 0;
  return n;
}

long count_safe(const TripleFrame& fr, double lam) {
  for (int tries = 0; tries < 8; ++tries) {
    try {
      return count_below(fr, lam);
    } catch (const PoleError&) {
      lam += 1e-9 * std::max(1.0, std::abs(lam));
    }
  }
  throw PoleError("eigenvalue counting failed near a pole");
}

}  // namespace

std::vector<double> exact_eigenvalues(const TripleFrame& fr, int count, double lo) {
  if (count < 1) throw ParamError("count must be positive");
  if (count_safe(fr, lo) > 0) throw ParamError("lower bound is above the first eigenvalue");
  double hi = std::max(1.0, 2 * std::abs(lo));
  while (count_safe(fr, hi) < count) hi *= 2;
  std::vector<double> ev;
  for (int i = 1; i <= count; ++i) {
    double a = ev.empty() ? lo : ev.back(), b = hi;
    if (!ev.empty() && count_safe(fr, a) >= i) {  // degenerate with the previous one
      ev.push_back(a);
      continue;
    }
    while (b - a > 1e-13 * std::max(1.0, std::abs(b))) {
      const double mid = 0.5 * (a + b);
      (count_safe(fr, mid) >= i ? b : a) = mid;
    }
    ev.push_back(0.5 * (a + b));
  }
  return ev;
}

}  // namespace qgh
