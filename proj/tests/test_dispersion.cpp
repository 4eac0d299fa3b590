#include <cmath>

#include "doctest.h"
#include "qgh/direct.hpp"
#include "qgh/dispersion.hpp"
#include "qgh/effective.hpp"

using namespace qgh;

TEST_CASE("closed forms at special points") {
  // l2 sqrt(z) = pi/2 and tau = pi/2: both cosines vanish
  CHECK(std::abs(k_closed(make_ex0(0.5, 0.5), kPi / 2, kPi * kPi)) < 1e-13);

  const ExampleParams p1 = make_ex1();
  const cplx z(7, 0.4), k = std::sqrt(z);
  const cplx want1 = -(2.0 * k / (p1.l1 + p1.l3)) * std::tan(p1.l2 * k / 2.0);
  CHECK(std::abs(k_closed(p1, 0.0, z) - want1) < 1e-12 * std::abs(want1));
  CHECK(std::abs(ex1_theta(p1, 0.0) - 1.0) < 1e-15);

  const ExampleParams p2 = make_ex2();
  const double zr = 9.0, kr = 3.0;
  const double tau = std::acos(std::cos(p2.l1 * kr));
  const double want2 = -(2.0 * kr * p2.a2 / p2.l3) * std::tan(p2.l2 * kr / (2 * p2.a2));
  CHECK(std::abs(k_closed(p2, tau, zr) - want2) < 1e-12 * std::abs(want2));
}

TEST_CASE("series terms in closed form") {
  const ExampleParams p = make_ex0(0.4, 0.6);
  const double tau = 1.1, l = p.l2;
  for (int j = 1; j <= 5; ++j) {
    const SeriesTerm t = k_series_term(p, tau, 1, j);
    const double sg = (j % 2) ? 1.0 : -1.0;  // (-1)^{j+1}
    const cplx vphi = std::sqrt(2 * l) / (kPi * j) * (sg * std::exp(kI * tau) + 1.0);
    const cplx gphi = std::sqrt(2 / l) * (kPi * j / l) * (-sg * std::exp(-kI * tau) - 1.0);
    CHECK(std::abs(t.v_phi - vphi) < 1e-13);
    CHECK(std::abs(t.g_phi - gphi) < 1e-12 * std::abs(gphi));
    CHECK(t.mu == doctest::Approx(std::pow(kPi * j / l, 2)));
  }
}

TEST_CASE("series agrees with the closed form") {
  const ExampleParams p = make_ex0();
  const cplx z(2, 1);
  const cplx kc = k_closed(p, 1.0, z);
  const double e1 = std::abs(k_series(p, 1.0, z, 10000) - kc);
  CHECK(e1 <= 1e-3 * std::abs(kc));
  const double e2 = std::abs(k_series(p, 1.0, z, 20000) - kc);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
  for (ExampleId id : {ExampleId::Ex1, ExampleId::Ex2}) {
    const ExampleParams q = default_params(id);
    const cplx c = k_closed(q, -0.8, cplx(5, 2), 0.5);
    CHECK(std::abs(k_series(q, -0.8, cplx(5, 2), 10000, 0.5) - c) <= 1e-3 * std::abs(c));
  }
  CHECK_THROWS_AS(k_series(p, 1.0, z, 5), ParamError);
}

TEST_CASE("trigonometric sum identities") {
  CHECK(sum_identity_rhs(0.0, false) == doctest::Approx(1.0 / 6));
  CHECK(sum_identity_rhs(0.0, true) == doctest::Approx(-1.0 / 12));
  CHECK(sum_identity_rhs(1e-5, false) == doctest::Approx(1.0 / 6));
  CHECK(sum_identity_rhs(1e-5, true) == doctest::Approx(-1.0 / 12));
  for (double x : {0.3, 1.0, 2.5}) {
    const auto s = verify_sum_identities(x, 1000000);
    REQUIRE(s.size() == 2);
    CHECK(s[0].error < 1e-6);
    CHECK(s[1].error < 1e-6);
    // half the difference of the two sums runs over odd j only
    const double odd = (s[0].rhs - s[1].rhs) / 2;
    CHECK(odd == doctest::Approx(std::tan(x / 2) / (4 * x)).epsilon(1e-12));
  }
}

TEST_CASE("Schur-Frobenius scalar") {
  for (ExampleId id : {ExampleId::Ex0, ExampleId::Ex1, ExampleId::Ex2})
    for (double tau : {-2.7, 0.5, 1.9}) {
      const ExampleParams p = default_params(id);
      const cplx z(4, 1.5);
      const cplx s = schur_frobenius(p, tau, 0.25, z);
      CHECK(std::abs(s * (k_closed(p, tau, z, 0.25) - z) - 1.0) < 1e-9);
      CHECK(s.imag() > 0);
    }
  // a real root of K = z
  const ExampleParams p = make_ex0();
  const double r = band_roots(p, 1.0, 30.0)[0];
  CHECK_THROWS_AS(schur_frobenius(p, 1.0, 1.0, r), PoleError);
}

TEST_CASE("band roots") {
  const ExampleParams p = make_ex0();
  const auto r0 = band_roots(p, 0.0, 100.0);
  REQUIRE(!r0.empty());
  CHECK(std::abs(r0[0]) < 1e-12);
  for (double tau : {0.0, 0.7, 2.0, -2.0})
    for (double r : band_roots(p, tau, 300.0)) {
      if (r < 1e-12) continue;
      const PoleFree h = pole_free(p, tau, std::sqrt(r));
      CHECK(std::abs(h.h) < 1e-9 * (1 + r));
      CHECK(std::abs(k_closed(p, tau, r) - r) < 1e-7 * (1 + r));
    }
  // even in tau
  const auto a = band_roots(make_ex2(), 1.3, 200.0), b = band_roots(make_ex2(), -1.3, 200.0);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
  CHECK(k_monotone(p, 0.7, 300.0));
  CHECK(k_monotone(make_ex2(), 0.7, 300.0));
  const auto poles = k_poles(p, 300.0);
  REQUIRE(poles.size() >= 2);
  CHECK(poles[0] == doctest::Approx(std::pow(kPi / p.l2, 2)));
}

TEST_CASE("homogenised spectrum matches the fiber operator as eps shrinks") {
  const ExampleParams p = make_ex0();
  const double tau = 1.2;
  const auto hs = hom_spectrum(p, tau, 200.0);
  REQUIRE(hs.size() >= 2);
  double prev = 0;
  for (double eps : {1.0 / 8, 1.0 / 16}) {
    const auto op = assemble(build_example(p), datta_weights(p, tau), make_fiber(eps, tau, 0.0), 1600);
    const auto ev = eigenvalues(op, 2);
    const double err = std::max(std::abs(ev[0] - hs[0]), std::abs(ev[1] - hs[1]));
    if (prev > 0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.15));
    prev = err;
  }
}

TEST_CASE("K is real on the real axis and even in tau") {
  for (ExampleId id : {ExampleId::Ex0, ExampleId::Ex1, ExampleId::Ex2}) {
    const ExampleParams p = default_params(id);
    for (double z : {1.3, 7.7, 22.0}) {
      const cplx k = k_closed(p, 0.9, z, 0.5);
      CHECK(std::abs(k.imag()) < 1e-13 * (1 + std::abs(k)));
      CHECK(std::abs(k - k_closed(p, -0.9, z, 0.5)) < 1e-13 * (1 + std::abs(k)));
    }
  }
}

TEST_CASE("Re theta is one plus a quadratic") {
  const ExampleParams p = make_ex1();
  // (Re theta - 1) / tau^2 tends to a constant
  double prev = 0;
  for (double t : {0.02, 0.01, 0.005}) {
    const double q = (ex1_theta(p, t).real() - 1.0) / (t * t);
    if (prev != 0) CHECK(q == doctest::Approx(prev).epsilon(1e-3));
    prev = q;
  }
  CHECK(prev < 0);
}

TEST_CASE("closed form records auxiliary scalars") {
  const DispersionEval d = k_closed_eval(make_ex1(), 0.4, cplx(2, 1), 0.1);
  CHECK(d.backend == DispersionBackend::ClosedForm);
  CHECK(d.sigma2 == doctest::Approx(ex1_sigma2(make_ex1())));
  CHECK(std::abs(std::abs(d.theta) - 1.0) < 1e-14);
  const DispersionEval s = k_series_eval(make_ex1(), 0.4, cplx(2, 1), 100, 0.1);
  CHECK(s.backend == DispersionBackend::Series);
  CHECK(s.J == 100);
}

TEST_CASE("Ex2 closed form with unequal soft speeds") {
  const ExampleParams p = make_ex2(0.3, 0.4, 0.3, 1.3, 0.8, 1.7);
  for (double tau : {-2.0, 0.5, 2.9}) {
    const cplx z(5, 2), c = k_closed(p, tau, z);
    CHECK(std::abs(k_series(p, tau, z, 20000) - c) < 1e-4 * std::abs(c));
  }
}
