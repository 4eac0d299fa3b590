#include "qgh/effective.hpp"

#include <cmath>

namespace qgh {

double ex1_sigma2(const ExampleParams& p) { return 1.0 / (p.l1 / (p.a1 * p.a1) + p.l3 / (p.a3 * p.a3)); }

EffectiveData effective_data(const ExampleParams& p, double tau, double eps, cplx z) {
  EffectiveData d;
  d.rot = triple_rotation(p, tau);
  d.b = b_eff(p, z, tau, eps)(0, 0);
  d.L = p.stiff_length();
  d.pi = std::sqrt(d.L / 2);
  if (p.id == ExampleId::Ex1) d.germ = ex1_sigma2(p) * (tau / eps) * (tau / eps) / d.L;
  return d;
}

namespace {

// u_s(end) or d_tau u_s(end) on the s-th soft edge
struct Term {
  int kind;  // 0 value, 1 co-derivative (d/dx + i tau)
  int s, end;
  cplx c;
};

struct Cond {
  std::vector<Term> t;
  cplx beta{0, 0}, rhs{0, 0};
};

// boundary problem (hom = false) or A_hom - z with beta row (hom = true)
std::vector<Cond> literal_conditions(const ExampleParams& p, double tau, double eps, cplx z, bool hom, cplx c) {
  std::vector<Cond> out;
  const EffectiveData d = effective_data(p, tau, eps, z);
  const double rl = 1.0 / std::sqrt(d.L);
  switch (p.id) {
    case ExampleId::Ex0: {
      const cplx xb = std::exp(-kI * p.l1 * tau);
      out.push_back({{{0, 0, 0, 1.0}, {0, 0, 1, -xb}}});
      if (!hom) {
        out.push_back({{{1, 0, 0, 1.0}, {1, 0, 1, -xb}, {0, 0, 0, z * p.l1}}});
      } else {
        out.push_back({{{0, 0, 0, 1.0}}, -rl});
        out.push_back({{{1, 0, 0, -rl}, {1, 0, 1, rl * xb}}, -z, c});
      }
      break;
    }
    case ExampleId::Ex1: {
      const cplx eb = std::conj(ex1_xi_phase(p, tau));
      const double s2t2 = ex1_sigma2(p) * (tau / eps) * (tau / eps);
      out.push_back({{{0, 0, 0, 1.0}, {0, 0, 1, eb}}});
      if (!hom) {
        out.push_back({{{1, 0, 0, 1.0}, {1, 0, 1, eb}, {0, 0, 0, -(s2t2 - d.L * z)}}});
      } else {
        out.push_back({{{0, 0, 0, 1.0}}, -rl});
        out.push_back({{{1, 0, 0, -rl}, {1, 0, 1, -rl * eb}}, d.germ - z, c});
      }
      break;
    }
    case ExampleId::Ex2: {
      // s = 0 is e1, s = 1 is e2
      const cplx x1b = std::exp(kI * tau * (p.l2 + p.l3)), x2b = std::exp(kI * tau * p.l2);
      const double q1 = p.a1 * p.a1, q2 = p.a2 * p.a2;
      const std::vector<Term> flux = {{1, 1, 0, q2}, {1, 1, 1, -q2 * x2b}, {1, 0, 0, q1 * x1b}, {1, 0, 1, -q1}};
      if (!hom) {
        out.push_back({{{0, 1, 0, 1.0}, {0, 1, 1, -x2b}}});
        out.push_back({{{0, 1, 0, 1.0}, {0, 0, 0, -x1b}}});
        out.push_back({{{0, 1, 0, 1.0}, {0, 0, 1, -1.0}}});
        Cond f{flux};
        f.t.push_back({0, 1, 0, z * p.l3});
        out.push_back(f);
      } else {
        out.push_back({{{0, 1, 0, 1.0}}, -rl});
        out.push_back({{{0, 1, 1, x2b}}, -rl});
        out.push_back({{{0, 0, 0, x1b}}, -rl});
        out.push_back({{{0, 0, 1, 1.0}}, -rl});
        Cond f;
        for (auto t : flux) f.t.push_back({t.kind, t.s, t.end, -rl * t.c});
        f.beta = -z, f.rhs = c;
        out.push_back(f);
      }
      break;
    }
  }
  return out;
}

struct SoftSolve {
  TripleFrame fr;
  std::vector<int> ids;
  std::vector<EdgeField> part;
  std::vector<std::array<cplx, 2>> dpart;
  std::vector<std::array<std::array<cplx, 2>, 2>> dlift;  // [data][end]
  cplx z;

  SoftSolve(const ExampleParams& p, double tau, double eps, cplx z_, const GraphField& f)
      : fr(make_frame(p, tau, eps, Component::Soft)), ids(fr.graph.soft_edge_ids), z(z_) {
    for (int i : ids) {
      const double l = fr.graph.edges[i].length, c = fr.speed(i);
      part.push_back(edge_dirichlet(f.e[i], c, tau, z));
      const EdgeField dp = d_tau(part.back(), tau);
      dpart.push_back({dp(0.0), dp(l)});
      std::array<std::array<cplx, 2>, 2> dl;
      for (int a = 0; a < 2; ++a) {
        const EdgeField g = d_tau(edge_lift(l, c, tau, z, a == 0 ? 1.0 : 0.0, a == 1 ? 1.0 : 0.0), tau);
        dl[a] = {g(0.0), g(l)};
      }
      dlift.push_back(dl);
    }
  }

  HomState solve(const std::vector<Cond>& conds, bool hom) const {
    const int ns = int(ids.size()), n = 2 * ns + (hom ? 1 : 0);
    if (int(conds.size()) != n) throw ParamError("boundary system is not square");
    CMat A = CMat::Zero(n, n);
    CVec r = CVec::Zero(n);
    for (int row = 0; row < n; ++row) {
      const Cond& cd = conds[row];
      r(row) = cd.rhs;
      for (const Term& t : cd.t) {
        if (t.kind == 0) {
          A(row, 2 * t.s + t.end) += t.c;
        } else {
          r(row) -= t.c * dpart[t.s][t.end];
          A(row, 2 * t.s) += t.c * dlift[t.s][0][t.end];
          A(row, 2 * t.s + 1) += t.c * dlift[t.s][1][t.end];
        }
      }
      if (hom) A(row, 2 * ns) += cd.beta;
    }
    Eigen::FullPivLU<CMat> lu(A);
    if (lu.rank() < n || lu.rcond() < 1e-14) throw SingularError("effective boundary system is singular");
    const CVec x = lu.solve(r);
    HomState s{zero_field(fr.graph), hom ? x(2 * ns) : cplx(0)};
    for (int k = 0; k < ns; ++k) {
      const int i = ids[k];
      s.u.e[i] = part[k] + edge_lift(fr.graph.edges[i].length, fr.speed(i), fr.weights.tau, z, x(2 * k), x(2 * k + 1));
    }
    return s;
  }
};

cplx eval_cond(const Cond& cd, const TripleFrame& fr, const GraphField& u, cplx beta, double tau) {
  const auto& ids = fr.graph.soft_edge_ids;
  cplx s = cd.beta * beta - cd.rhs;
  for (const Term& t : cd.t) {
    const int i = ids[t.s];
    const double x = t.end == 0 ? 0.0 : fr.graph.edges[i].length;
    s += t.c * (t.kind == 0 ? u.e[i](x) : d_tau(u.e[i], tau)(x));
  }
  return s;
}

}  // namespace

GraphField r_eff(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& f) {
  SoftSolve ss(p, tau, eps, z, f);
  return ss.solve(literal_conditions(p, tau, eps, z, false, 0.0), false).u;
}

double r_eff_condition_residual(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& u) {
  const TripleFrame fr = make_frame(p, tau, eps, Component::Soft);
  double r = 0;
  for (const Cond& cd : literal_conditions(p, tau, eps, z, false, 0.0))
    r = std::max(r, std::abs(eval_cond(cd, fr, u, 0.0, tau)));
  return r;
}

namespace {

void eff_boundary(const ExampleParams& p, double tau, double eps, cplx z, CMat& c0, CMat& c1) {
  const EffectiveData d = effective_data(p, tau, eps, z);
  c0 = CMat::Zero(2, 2);
  c1 = CMat::Zero(2, 2);
  c0.row(0) = d.rot.psi_perp.adjoint();
  c0.row(1) = -d.b * d.rot.psi.adjoint();
  c1.row(1) = d.rot.psi.adjoint();
}

}  // namespace

GraphField r_eff_triple(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& f) {
  CMat c0, c1;
  eff_boundary(p, tau, eps, z, c0, c1);
  return bvp_resolvent(make_frame(p, tau, eps, Component::Soft), z, c0, c1, f);
}

CMat q_eff(const ExampleParams& p, double tau, double eps, cplx z) {
  CMat c0, c1;
  eff_boundary(p, tau, eps, z, c0, c1);
  const CMat m = make_frame(p, tau, eps, Component::Soft).m(z);
  Eigen::FullPivLU<CMat> lu(c0 + c1 * m);
  if (lu.rank() < 2) throw SingularError("effective boundary system is singular");
  return lu.solve(c1);
}

cplx inner(const HomState& a, const HomState& b) { return inner(a.u, b.u) + a.beta * std::conj(b.beta); }

HomState operator-(const HomState& a, const HomState& b) { return {a.u - b.u, a.beta - b.beta}; }

HomState a_hom_resolvent(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& f, cplx c) {
  SoftSolve ss(p, tau, eps, z, f);
  return ss.solve(literal_conditions(p, tau, eps, z, true, c), true);
}

HomState a_hom_apply(const ExampleParams& p, double tau, double eps, const HomState& x, double* domain_residual) {
  const TripleFrame fr = make_frame(p, tau, eps, Component::Soft);
  // conditions at z = 0 with c = 0: ties evaluate to their residual, the last row to the beta component
  const auto conds = literal_conditions(p, tau, eps, 0.0, true, 0.0);
  double r = 0;
  for (size_t k = 0; k + 1 < conds.size(); ++k) r = std::max(r, std::abs(eval_cond(conds[k], fr, x.u, x.beta, tau)));
  if (domain_residual) *domain_residual = r;
  return {fr.a_max(x.u), eval_cond(conds.back(), fr, x.u, x.beta, tau)};
}

DilationBlocks strauss_dilation_resolvent(const ExampleParams& p, double tau, double eps, cplx z) {
  validate(p);
  check_tau(tau);
  return {p, tau, eps, z};
}

GraphField DilationBlocks::b11(const GraphField& f) const { return r_eff_triple(params, tau, eps, z, f); }

cplx DilationBlocks::b21(const GraphField& f) const {
  const EffectiveData d = effective_data(params, tau, eps, z);
  const TripleFrame fr = make_frame(params, tau, eps, Component::Soft);
  return d.pi * d.rot.psi.dot(fr.gamma0(b11(f)));
}

GraphField DilationBlocks::b12(cplx c) const {
  const EffectiveData d = effective_data(params, tau, eps, z);
  const TripleFrame fr = make_frame(params, tau, eps, Component::Soft);
  const CMat qb = q_eff(params, tau, eps, std::conj(z));
  const CVec data = -(qb.adjoint() * d.rot.psi);
  return (d.pi * c) * fr.gamma(z, data);
}

cplx DilationBlocks::b22() const {
  const EffectiveData d = effective_data(params, tau, eps, z);
  const CMat qb = q_eff(params, tau, eps, std::conj(z));
  return -d.pi * d.pi * d.rot.psi.dot(qb.adjoint() * d.rot.psi);
}

HomState DilationBlocks::apply(const HomState& x) const {
  return {b11(x.u) + b12(x.beta), b21(x.u) + b22() * x.beta};
}

PsiEmbedding psi_embedding(const ExampleParams& p, double tau, double eps) {
  const TripleFrame st = make_frame(p, tau, eps, Component::Stiff);
  const TripleRotation r = triple_rotation(p, tau);
  GraphField g = st.gamma(0.0, r.psi);
  g *= 1.0 / norm(g);
  return {g, make_frame(p, tau, eps, Component::Soft)};
}

HomState PsiEmbedding::forward(const GraphField& f) const { return {soft.restrict(f), inner(f, psi_stiff)}; }

GraphField PsiEmbedding::adjoint(const HomState& x) const { return soft.restrict(x.u) + x.beta * psi_stiff; }

}  // namespace qgh
