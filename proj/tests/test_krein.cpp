#include <cmath>

#include "doctest.h"
#include "qgh/direct.hpp"
#include "qgh/krein.hpp"
#include "qgh/lab.hpp"

using namespace qgh;

namespace {

cplx ip(const CVec& a, const CVec& b) { return b.dot(a); }

GraphField test_field(const MetricGraph& g, double tau) {
  GraphField f = zero_field(g);
  for (int e = 0; e < g.num_edges(); ++e)
    f += cplx(0.7 + e, -0.2 * e) * sine_mode(g, e, 1, tau) + cplx(0.1, 0.4) * sine_mode(g, e, 3, tau);
  return f;
}

}  // namespace

TEST_CASE("boundary maps of the lift") {
  for (ExampleId id : {ExampleId::Ex0, ExampleId::Ex1, ExampleId::Ex2}) {
    const TripleFrame fr = make_frame(default_params(id), 0.9, 0.3);
    const cplx z(3, 1.5);
    const CMat m = fr.m(z);
    for (int j = 0; j < 2; ++j) {
      const CVec d = CVec::Unit(2, j);
      const GraphField u = fr.gamma(z, d);
      CHECK((fr.gamma0(u) - d).norm() < 1e-12);
      CHECK((fr.gamma1(u) - m.col(j)).norm() < 1e-10 * m.norm());
      // lift solves the homogeneous equation
      GraphField r = fr.a_max(u) - z * u;
      CHECK(norm(r) < 1e-9 * m.norm());
    }
    CHECK(norm(fr.gamma(z, CVec::Zero(2))) == 0.0);
  }
}

TEST_CASE("Green identity") {
  const TripleFrame fr = make_frame(make_ex1(), -1.7, 0.4);
  const cplx z1(2, 1), z2(-1, 3);
  const GraphField f = test_field(fr.graph, -1.7);
  const GraphField u = fr.gamma(z1, CVec::Unit(2, 0) + cplx(0, 1) * CVec::Unit(2, 1)) + fr.dirichlet_resolvent(z1, f);
  const GraphField v = fr.gamma(z2, cplx(0.5, -0.2) * CVec::Unit(2, 1)) + fr.dirichlet_resolvent(z2, 2.0 * f);
  const cplx lhs = inner(fr.a_max(u), v) - inner(u, fr.a_max(v));
  const cplx rhs = ip(fr.gamma1(u), fr.gamma0(v)) - ip(fr.gamma0(u), fr.gamma1(v));
  CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
}

TEST_CASE("Dirichlet resolvent of an eigenfunction") {
  const MetricGraph g = make_graph({{1, 0.7, 1.0, Stiffness::Soft, 0, 1}}, 2, false);
  const double tau = 0.6;
  const cplx z(4, 0.5);
  const GraphField f = sine_mode(g, 0, 1, tau);
  const EdgeField u = edge_dirichlet(f.e[0], 1.0, tau, z);
  const double mu = std::pow(kPi / 0.7, 2);
  for (double x : {0.0, 0.1, 0.35, 0.6, 0.7}) CHECK(std::abs(u(x) - f.e[0](x) / (mu - z)) < 1e-13);
  const EdgeField zero{0.7, {}};
  CHECK(std::abs(edge_dirichlet(zero, 1.0, tau, z)(0.3)) == 0.0);
}

TEST_CASE("Green kernel agrees with the closed-form Dirichlet solve") {
  const double l = 0.4, c = 1.7, tau = 2.0;
  const cplx z(30, 4);
  const MetricGraph g = make_graph({{1, l, c, Stiffness::Soft, 0, 1}}, 2, false);
  const EdgeField f = sine_mode(g, 0, 2, tau).e[0];
  const EdgeField u = edge_dirichlet(f, c, tau, z);
  // composite Simpson on the kernel
  const int n = 2000;
  const double h = l / n, x = 0.13;
  cplx s = 0;
  for (int i = 0; i <= n; ++i) {
    const double y = i * h, w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    s += w * edge_green(l, c, tau, z, x, y) * f(y);
  }
  s *= h / 3;
  CHECK(std::abs(s - u(x)) < 1e-9);
  CHECK(std::abs(edge_lift_value(l, c, tau, z, 1.0, 2.0, 0.0) - 1.0) < 1e-13);
  CHECK(std::abs(edge_lift_value(l, c, tau, z, 1.0, 2.0, l) - 2.0) < 1e-13);
}

TEST_CASE("stiff lift at zero energy") {
  const ExampleParams p = make_ex0(0.5, 0.5, 1.2);
  const double tau = 0.8, eps = 0.1;
  const TripleFrame fr = make_frame(p, tau, eps, Component::Stiff);
  const double s = p.a1 * p.a1 / (eps * eps * p.l1);
  const CVec g1 = fr.gamma1(fr.gamma(0.0, CVec::Unit(2, 0)));
  CHECK(std::abs(g1(0) + s) < 1e-10 * s);
  CHECK(std::abs(std::abs(g1(1)) - s) < 1e-10 * s);
  const CMat m0 = fr.m(0.0);
  CHECK((m0.col(0) - g1).norm() < 1e-10 * s);
  // the phase of the off-diagonal entry is e^{-+ i l1 tau}
  CHECK(std::abs(std::cos(std::arg(g1(1))) - std::cos(p.l1 * tau)) < 1e-12);
}

TEST_CASE("resolvent adjoint symmetry") {
  for (ExampleId id : {ExampleId::Ex0, ExampleId::Ex1, ExampleId::Ex2}) {
    const TripleFrame fr = make_frame(default_params(id), 2.5, 0.2);
    const cplx z(6, 1.2);
    const GraphField f = test_field(fr.graph, 2.5);
    const GraphField g = sine_mode(fr.graph, 0, 2, 2.5) + sine_mode(fr.graph, 1, 1, 2.5);
    const cplx a = inner(krein_resolvent(fr, z, f), g), b = inner(f, krein_resolvent(fr, std::conj(z), g));
    CHECK(std::abs(a - b) < 1e-11 * (1 + std::abs(a)));
  }
}

TEST_CASE("Krein resolvent solves the equation with Kirchhoff conditions") {
  const TripleFrame fr = make_frame(make_ex2(), -0.4, 0.3);
  const cplx z(1, 2);
  const GraphField f = test_field(fr.graph, -0.4);
  const GraphField u = krein_resolvent(fr, z, f);
  CHECK(norm(fr.a_max(u) - z * u - f) < 1e-9 * norm(f));
  CHECK(fr.gamma1(u).norm() < 1e-9);
}

TEST_CASE("perturbing B by order eps^2 moves the resolvent by order eps^2") {
  const ExampleParams p = make_ex0();
  const double tau = 0.7, eps0 = 0.1;
  const cplx z(2, 1);
  const TripleFrame soft = make_frame(p, tau, eps0, Component::Soft);
  const CMat b0 = -make_frame(p, tau, eps0, Component::Stiff).m(z);
  const GraphField f = sine_mode(soft.graph, 1, 1, tau);
  const GraphField u0 = generalized_resolvent(soft, z, b0, f);
  CMat pert(2, 2);
  pert << 1.0, cplx(0.5, 0.2), cplx(0.5, -0.2), -2.0;
  std::vector<std::pair<double, double>> pairs;
  for (double e : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const GraphField u = generalized_resolvent(soft, z, b0 + e * e * pert, f);
    pairs.push_back({e, norm(u - u0)});
  }
  const SlopeFit fit = fit_slope(pairs);
  CHECK(fit.pass);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("exact eigenvalues match the grid operator") {
  const TripleFrame fr = make_frame(make_ex0(), 1.0, 0.25);
  const auto ex = exact_eigenvalues(fr, 3);
  REQUIRE(ex.size() == 3);
  const auto op = assemble(fr.graph, fr.weights, make_fiber(0.25, 1.0, 0.0), 800);
  const auto fd = eigenvalues(op, 3);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(fd[j] - ex[j]) < 1e-3 * (1 + ex[j]));
}
