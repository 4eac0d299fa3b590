#include <cmath>

#include "doctest.h"
#include "qgh/effective.hpp"
#include "qgh/lab.hpp"

using namespace qgh;

TEST_CASE("slope fits") {
  std::vector<std::pair<double, double>> a, b, c;
  for (double e : geometric_eps(3, 8)) {
    a.push_back({e, 3 * e * e});
    b.push_back({e, e * e + 0.01 * e * e * e});
    c.push_back({e, 0.5});
  }
  const SlopeFit fa = fit_slope(a);
  CHECK(std::abs(fa.slope - 2.0) < 1e-10);
  CHECK(std::abs(fa.r2 - 1.0) < 1e-12);
  CHECK(fa.pass);
  const SlopeFit fb = fit_slope(b);
  // the positive higher-order term steepens the local slope slightly above 2
  CHECK(fb.slope > 2.0);
  CHECK(fb.slope < 2.001);
  const SlopeFit fc = fit_slope(c);
  CHECK(std::abs(fc.slope) < 1e-12);
  CHECK(!fc.pass);
  CHECK_THROWS(fit_slope({{0.1, 1.0}, {0.05, 0.5}}));
}

TEST_CASE("operator norm of a difference") {
  const int n = 12;
  CMat a = CMat::Random(n, n);
  RVec w = RVec::LinSpaced(n, 0.5, 2.0);
  CHECK(operator_norm_diff(a, a, w) <= 1e-12);
  // B = A + delta W^{-1/2} u v^* W^{1/2} with unit u, v has weighted difference norm delta
  CVec u = CVec::Random(n), v = CVec::Random(n);
  u.normalize(), v.normalize();
  const double delta = 0.37;
  const RVec sw = w.cwiseSqrt();
  const CMat b = a + delta * sw.cwiseInverse().asDiagonal() * (u * v.adjoint()) * sw.asDiagonal();
  CHECK(std::abs(operator_norm_diff(a, b, w) - delta) < 1e-8);
  CHECK(operator_norm(CMat::Identity(n, n) * 2.0, w) == doctest::Approx(2.0));
}

TEST_CASE("tags and grids") {
  CHECK(experiment_tags().size() == 13);
  CHECK(criterion_of("additivity") == 1);
  CHECK(criterion_of("line_models") == 13);
  CHECK_THROWS_AS(default_spec("no_such_tag"), ParamError);
  const auto g = default_tau_grid(17);
  CHECK(g.size() == 17);
  CHECK(g.front() == doctest::Approx(-kPi + 1e-3));
  CHECK(g.back() == doctest::Approx(kPi - 1e-3));
  const auto e = geometric_eps(3, 8);
  CHECK(e.size() == 6);
  CHECK(e.front() == 0.125);
  CHECK(e.back() == 1.0 / 256);
}

TEST_CASE("config parsing") {
  const SweepSpec s = parse_config(
      "# comment\n"
      "tag = gen_res_rate\n"
      "example = Ex1\n"
      "l1 = 0.2\nl2 = 0.5\nl3 = 0.3\n"
      "tau = -1, 0.5\n"
      "eps_exp = 3, 6\n"
      "z = 2+1i, 4+0.5i\n");
  CHECK(s.tag == "gen_res_rate");
  REQUIRE(s.examples.size() == 1);
  CHECK(s.examples[0].id == ExampleId::Ex1);
  CHECK(s.examples[0].l1 == 0.2);
  CHECK(s.taus == std::vector<double>{-1, 0.5});
  CHECK(s.epss.size() == 4);
  REQUIRE(s.zs.size() == 2);
  CHECK(s.zs[1] == cplx(4, 0.5));
  CHECK_THROWS_AS(parse_config("tag = nope\n"), ParamError);
  CHECK_THROWS_AS(parse_config("tag = additivity\nfoo = 1\n"), ParamError);
  CHECK_THROWS_AS(parse_config("example = Ex0\n"), ParamError);
  CHECK_THROWS_AS(parse_config("tag = additivity\nl1 = 0.9\n"), ParamError);
}

TEST_CASE("small experiments run and are deterministic") {
  SweepSpec s = default_spec("additivity");
  const Report a = run_experiment(s), b = run_experiment(s);
  CHECK(a.pass);
  CHECK(a.criterion == 1);
  CHECK(a.table.rows == b.table.rows);
  CHECK(!a.table.header.empty());

  SweepSpec g = default_spec("gen_res_rate");
  g.examples = {make_ex0()};
  g.taus = default_tau_grid(8);
  g.zs = {cplx(2, 1)};
  CHECK(run_experiment(g).pass);
  // a grid below the required size is reported as a failure
  s.taus = {-1.0, 0.5};
  CHECK(!run_experiment(s).pass);
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hit(100, 0);
  parallel_for(100, [&](int i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK(worker_count() >= 1);
}

TEST_CASE("R_eps versus R_eff shrinks fourfold per halving") {
  const ExampleParams p = make_ex0();
  const double tau = 0.9;
  const cplx z(2, 1);
  double prev = 0;
  for (double eps : {0.1, 0.05}) {
    const TripleFrame soft = make_frame(p, tau, eps, Component::Soft);
    const TripleFrame stiff = make_frame(p, tau, eps, Component::Stiff);
    const GraphField f = sine_mode(soft.graph, 1, 1, tau);
    const GraphField d = generalized_resolvent(soft, z, -stiff.m(z), f) - r_eff(p, tau, eps, z, f);
    if (prev > 0) CHECK(prev / norm(d) == doctest::Approx(4.0).epsilon(0.05));
    prev = norm(d);
  }
}
