#include "qgh/asymptotics.hpp"

#include <cmath>

namespace qgh {

Mat2 b_matrix(const ExampleParams& p, const FiberParams& f) { return -m_blocks_closed(p, f).m_stiff; }

cplx ex1_xi(const ExampleParams& p, double tau) {
  const double A = p.a1 * p.a1 / p.l1, C = p.a3 * p.a3 / p.l3;
  return -A * std::exp(kI * tau * (p.l1 + p.l3)) - C * std::exp(-kI * tau * p.l2);
}

cplx ex1_xi_phase(const ExampleParams& p, double tau) {
  // xi = -e^{i phi} ((A + C) cos(tau/2) + i (A - C) sin(tau/2)), phi = tau (l1 + l3 - l2) / 2
  const double A = p.a1 * p.a1 / p.l1, C = p.a3 * p.a3 / p.l3;
  const cplx u{(A + C) * std::cos(0.5 * tau), (A - C) * std::sin(0.5 * tau)};
  if (std::abs(u) < 1e-10 * (A + C)) throw ParamError("xi vanishes: equal impedances at tau = -pi");
  return -std::exp(0.5 * kI * tau * (p.l1 + p.l3 - p.l2)) * u / std::abs(u);
}

TripleRotation triple_rotation(const ExampleParams& p, double tau) {
  check_tau(tau);
  TripleRotation r;
  const double s = 1.0 / std::sqrt(2.0);
  cplx eta;  // psi = (1, eta)/sqrt2, psi_perp = (1, -eta)/sqrt2
  switch (p.id) {
    case ExampleId::Ex0:
      r.xi = std::exp(kI * p.l1 * tau);
      eta = r.xi;
      r.mu = 0, r.mu_perp = 2 * p.a1 * p.a1 / p.l1;
      break;
    case ExampleId::Ex1: {
      const double D = p.a1 * p.a1 / p.l1 + p.a3 * p.a3 / p.l3;
      r.xi = ex1_xi(p, tau);
      eta = -ex1_xi_phase(p, tau);
      r.mu = D - std::abs(r.xi), r.mu_perp = D + std::abs(r.xi);
      break;
    }
    case ExampleId::Ex2:
      r.xi = std::exp(-kI * p.l2 * tau);
      eta = r.xi;
      r.mu = 0, r.mu_perp = 2 * p.a3 * p.a3 / p.l3;
      break;
  }
  r.psi << s, s * eta;
  r.psi_perp << s, -s * eta;
  r.X << r.psi, r.psi_perp;
  r.P << 1, 0, 0, 0;
  r.P_perp << 0, 0, 0, 1;
  return r;
}

Mat2 rotate_triple(const Mat2& b, const Mat2& x) {
  if ((x.adjoint() * x - Mat2::Identity()).norm() > 1e-12) throw ParamError("rotation is not unitary");
  return x.adjoint() * b * x;
}

Mat2 projection_transform(const Mat2& bhat, const Mat2& p, const Mat2& p_perp) {
  const Mat2 den = p_perp * bhat + p;
  Eigen::FullPivLU<Mat2> lu(den);
  if (!lu.isInvertible() || lu.rcond() < 1e-15) throw SingularError("projection transform denominator is singular");
  return (p * bhat - p_perp) * lu.inverse();
}

Mat2 b_tilde(const ExampleParams& p, const FiberParams& f) {
  const TripleRotation r = triple_rotation(p, f.tau);
  return projection_transform(rotate_triple(b_matrix(p, f), r.X), r.P, r.P_perp);
}

Mat2 b_tilde_closed(const ExampleParams& p, const FiberParams& f) {
  if (p.id == ExampleId::Ex1) throw ParamError("no closed diagonal form for Ex1");
  const double a = p.id == ExampleId::Ex0 ? p.a1 : p.a3;
  const double l = p.id == ExampleId::Ex0 ? p.l1 : p.l3;
  const cplx k = f.k;
  const cplx x = k * f.epsilon * l / a;
  cot_csc(x);  // pole guard
  // cot x - csc x = -tan(x/2), free of cancellation for small x
  const cplx d = -std::tan(0.5 * x);
  Mat2 b = Mat2::Zero();
  b(0, 0) = (a * k / f.epsilon) * d;
  b(1, 1) = (f.epsilon / (a * k)) * d;
  return b;
}

Ex1Scalars ex1_scalars(const ExampleParams& p, const FiberParams& f) {
  const cplx k = f.k;
  const double eps = f.epsilon, tau = f.tau;
  const TrigPair t1 = cot_csc(k * eps * p.l1 / p.a1), t3 = cot_csc(k * eps * p.l3 / p.a3);
  Ex1Scalars s;
  s.alpha = p.a1 * k * t1.cot + p.a3 * k * t3.cot;
  const cplx e1 = std::exp(kI * tau * (p.l1 + p.l3)), e3 = std::exp(-kI * tau * p.l2);
  s.beta = -p.a1 * k * e1 * t1.csc - p.a3 * k * e3 * t3.csc;
  s.beta_c = -p.a1 * k * std::conj(e1) * t1.csc - p.a3 * k * std::conj(e3) * t3.csc;
  return s;
}

cplx delta_fn(const ExampleParams& p, double tau, double eps, cplx z) {
  if (p.id != ExampleId::Ex1) throw ParamError("delta is defined for Ex1 only");
  const FiberParams f = make_fiber(eps, tau, z);
  const Ex1Scalars s = ex1_scalars(p, f);
  const cplx eta = ex1_xi_phase(p, tau);
  // Re(conj(xi) beta / |xi|) continued off the real axis
  const cplx re = 0.5 * (std::conj(eta) * s.beta + eta * s.beta_c);
  const cplx den = s.alpha * s.alpha - s.beta * s.beta_c;
  if (std::abs(den) < 1e-12 * (std::norm(s.alpha) + 1)) throw SingularError("delta denominator vanishes");
  return eps * (s.alpha + re) / den;
}

cplx delta_limit(const ExampleParams& p, double tau, double eps, cplx z) {
  const double A = p.a1 * p.a1 / p.l1, C = p.a3 * p.a3 / p.l3, D = A + C;
  const double t = tau / eps;
  return 2 * D / (A * C * t * t - (p.l1 + p.l3) * D * z);
}

Mat2 b_prime(const ExampleParams& p, const FiberParams& f) {
  Mat2 q, qp;
  q << 1, 0, 0, 0;
  qp << 0, 0, 0, 1;
  return projection_transform(b_tilde(p, f), qp, q);
}

Mat2 b_prime_eff(const ExampleParams& p, cplx z, double tau, double eps) {
  Mat2 b = Mat2::Zero();
  b(0, 0) = -delta_limit(p, tau, eps, z);
  return b;
}

Mat2 b_eff(const ExampleParams& p, cplx z, double tau, double eps) {
  check_tau(tau);
  Mat2 b = Mat2::Zero();
  switch (p.id) {
    case ExampleId::Ex0: b(0, 0) = -p.l1 * z / 2.0; break;
    case ExampleId::Ex1: {
      const double A = p.a1 * p.a1 / p.l1, C = p.a3 * p.a3 / p.l3, D = A + C;
      const double t = tau / eps;
      b(0, 0) = (A * C * t * t - (p.l1 + p.l3) * D * z) / (2 * D);
      break;
    }
    case ExampleId::Ex2: b(0, 0) = -p.l3 * z / 2.0; break;
  }
  return b;
}

double b_eff_error(const ExampleParams& p, const FiberParams& f) {
  Mat2 d;
  if (p.id == ExampleId::Ex1)
    d = b_prime(p, f) - b_prime_eff(p, f.z, f.tau, f.epsilon);
  else
    d = b_tilde(p, f) - b_eff(p, f.z, f.tau, f.epsilon);
  return Eigen::JacobiSVD<Mat2>(d).singularValues()(0);
}

}  // namespace qgh
