#include <cmath>

#include "doctest.h"
#include "qgh/effective.hpp"

using namespace qgh;

namespace {

GraphField soft_field(const TripleFrame& soft, double tau) {
  GraphField f = zero_field(soft.graph);
  for (int e : soft.graph.soft_edge_ids)
    f += cplx(1.0 + e, 0.3) * sine_mode(soft.graph, e, 1, tau) + cplx(-0.2, 0.5) * sine_mode(soft.graph, e, 2, tau);
  return f;
}

double hnorm(const HomState& x) { return std::sqrt(inner(x, x).real()); }

const ExampleId kAll[] = {ExampleId::Ex0, ExampleId::Ex1, ExampleId::Ex2};

}  // namespace

TEST_CASE("edge-by-edge and triple forms of R_eff agree") {
  for (ExampleId id : kAll) {
    const ExampleParams p = default_params(id);
    const double tau = 1.3, eps = 0.1;
    const cplx z(2, 1);
    const TripleFrame soft = make_frame(p, tau, eps, Component::Soft);
    const GraphField f = soft_field(soft, tau);
    const GraphField a = r_eff(p, tau, eps, z, f), b = r_eff_triple(p, tau, eps, z, f);
    CHECK(norm(a - b) < 1e-10 * norm(a));
    CHECK(r_eff_condition_residual(p, tau, eps, z, a) < 1e-10 * (1 + norm(a)));
    CHECK(norm(soft.a_max(a) - z * a - f) < 1e-9 * norm(f));
    CHECK(norm(r_eff(p, tau, eps, z, zero_field(soft.graph))) == 0.0);
  }
}

TEST_CASE("Schur consistency of the homogenised resolvent") {
  for (ExampleId id : kAll)
    for (double tau : {-2.0, 0.4}) {
      const ExampleParams p = default_params(id);
      const double eps = 0.125;
      const cplx z(5, 2);
      const TripleFrame soft = make_frame(p, tau, eps, Component::Soft);
      const GraphField f = soft_field(soft, tau);
      const HomState x = a_hom_resolvent(p, tau, eps, z, f, 0.0);
      CHECK(norm(x.u - r_eff(p, tau, eps, z, f)) < 1e-10 * norm(x.u));
    }
}

TEST_CASE("homogenised resolvent inverts the operator") {
  for (ExampleId id : kAll) {
    const ExampleParams p = default_params(id);
    const double tau = 0.9, eps = 0.2;
    const cplx z(2, 1), c(0.4, -1.1);
    const TripleFrame soft = make_frame(p, tau, eps, Component::Soft);
    const GraphField f = soft_field(soft, tau);
    for (const GraphField& g : {f, zero_field(soft.graph)}) {
      const HomState x = a_hom_resolvent(p, tau, eps, z, g, c);
      double dom = 1;
      const HomState ax = a_hom_apply(p, tau, eps, x, &dom);
      CHECK(dom < 1e-10 * (1 + hnorm(x)));
      CHECK(norm(ax.u - z * x.u - g) < 1e-9 * (1 + norm(g)));
      CHECK(std::abs(ax.beta - z * x.beta - c) < 1e-9);
    }
  }
}

TEST_CASE("homogenised resolvent identity and adjoint symmetry") {
  for (ExampleId id : kAll) {
    const ExampleParams p = default_params(id);
    const double tau = -1.1, eps = 0.25;
    const cplx z(2, 1), w(1, -2);
    const TripleFrame soft = make_frame(p, tau, eps, Component::Soft);
    const GraphField f = soft_field(soft, tau);
    const GraphField g = sine_mode(soft.graph, soft.graph.soft_edge_ids[0], 3, tau);
    const HomState rwf = a_hom_resolvent(p, tau, eps, w, f, 0.5);
    const HomState lhs = a_hom_resolvent(p, tau, eps, z, f, 0.5) - rwf;
    const HomState rz = a_hom_resolvent(p, tau, eps, z, rwf.u, rwf.beta);
    CHECK(hnorm(lhs - HomState{(z - w) * rz.u, (z - w) * rz.beta}) < 1e-9 * hnorm(lhs));
    const HomState a = a_hom_resolvent(p, tau, eps, z, f, 0.5);
    const HomState b = a_hom_resolvent(p, tau, eps, std::conj(z), g, -1.0);
    const cplx x1 = inner(a, HomState{g, -1.0}), x2 = inner(HomState{f, 0.5}, b);
    CHECK(std::abs(x1 - x2) < 1e-9 * (1 + std::abs(x1)));
  }
}

TEST_CASE("dilation blocks") {
  for (ExampleId id : kAll) {
    const ExampleParams p = default_params(id);
    const double tau = 0.6, eps = 0.2;
    const cplx z(3, 1.5);
    const TripleFrame soft = make_frame(p, tau, eps, Component::Soft);
    const GraphField f = soft_field(soft, tau);
    const DilationBlocks d = strauss_dilation_resolvent(p, tau, eps, z);
    const DilationBlocks db = strauss_dilation_resolvent(p, tau, eps, std::conj(z));
    // block(1,2)(z) = block(2,1)(conj z)^*
    const cplx c(0.7, 0.2);
    CHECK(std::abs(inner(d.b12(c), f) - c * std::conj(db.b21(f))) < 1e-10 * (1 + norm(f)));
    // agreement with the homogenised resolvent
    const HomState x = d.apply({f, c}), y = a_hom_resolvent(p, tau, eps, z, f, c);
    CHECK(hnorm(x - y) < 1e-9 * hnorm(y));
    CHECK(std::abs(d.b22() - a_hom_resolvent(p, tau, eps, z, zero_field(soft.graph), 1.0).beta) < 1e-9);
  }
}

TEST_CASE("embedding is a partial isometry") {
  for (ExampleId id : kAll) {
    const ExampleParams p = default_params(id);
    const double tau = 1.7, eps = 0.1;
    const PsiEmbedding psi = psi_embedding(p, tau, eps);
    const TripleFrame full = make_frame(p, tau, eps);
    const GraphField fs = soft_field(psi.soft, tau);
    const HomState a = psi.forward(fs);
    CHECK(norm(a.u - fs) < 1e-14);
    CHECK(std::abs(a.beta) < 1e-14);
    const HomState b = psi.forward(psi.psi_stiff);
    CHECK(norm(b.u) < 1e-14);
    CHECK(std::abs(b.beta - 1.0) < 1e-12);
    GraphField g = zero_field(full.graph);
    for (int e = 0; e < full.graph.num_edges(); ++e) g += cplx(1, e) * sine_mode(full.graph, e, 1, tau);
    const GraphField pg = psi.adjoint(psi.forward(g));
    CHECK(norm(psi.adjoint(psi.forward(pg)) - pg) < 1e-12 * norm(g));
    const GraphField h = sine_mode(full.graph, 0, 2, tau) + full.gamma(0.0, CVec::Ones(2));
    const GraphField ph = psi.adjoint(psi.forward(h));
    CHECK(std::abs(inner(pg, h) - inner(g, ph)) < 1e-12 * norm(g) * norm(h));
    const HomState x{fs, cplx(0.3, 0.9)};
    CHECK(hnorm(psi.forward(psi.adjoint(x)) - x) < 1e-12 * hnorm(x));
  }
}

TEST_CASE("germ term of Ex1") {
  const ExampleParams p = make_ex1();
  const double tau = 0.3, eps = 0.1;
  const EffectiveData d = effective_data(p, tau, eps, cplx(2, 1));
  const double s2 = 1.0 / (p.l1 / (p.a1 * p.a1) + p.l3 / (p.a3 * p.a3));
  CHECK(ex1_sigma2(p) == doctest::Approx(s2));
  CHECK(d.germ == doctest::Approx(s2 * 9.0 / (p.l1 + p.l3)));
  CHECK(d.L == doctest::Approx(0.6));
  CHECK(d.pi == doctest::Approx(std::sqrt(0.3)));
  CHECK(effective_data(make_ex0(), tau, eps, 2.0).germ == 0.0);
}
