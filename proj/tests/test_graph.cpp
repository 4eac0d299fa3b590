#include <cmath>

#include "doctest.h"
#include "qgh/graph.hpp"

using namespace qgh;

TEST_CASE("Ex0 graph layout") {
  const MetricGraph g = build_example(make_ex0(0.5, 0.5, 1.0));
  CHECK(g.num_edges() == 2);
  CHECK(g.num_vertices() == 2);
  CHECK(g.edges[0].stiffness == Stiffness::Stiff);
  CHECK(g.edges[1].stiffness == Stiffness::Soft);
  CHECK(g.total_length() == doctest::Approx(1.0));
  CHECK(g.stiff_edge_ids == std::vector<int>{0});
  CHECK(g.soft_edge_ids == std::vector<int>{1});
}

TEST_CASE("Ex1 and Ex2 soft sets") {
  const MetricGraph g1 = build_example(make_ex1());
  CHECK(g1.num_edges() == 3);
  CHECK(g1.soft_edge_ids == std::vector<int>{1});
  CHECK(g1.stiff_edge_ids == std::vector<int>{0, 2});
  const MetricGraph g2 = build_example(make_ex2());
  CHECK(g2.soft_edge_ids == std::vector<int>{0, 1});
  CHECK(g2.stiff_edge_ids == std::vector<int>{2});
}

TEST_CASE("invalid lengths are rejected") {
  CHECK_THROWS_AS(build_example(make_ex0(0.6, 0.6)), ParamError);
  CHECK_THROWS_AS(build_example(make_ex1(0.3, -0.4, 1.1)), ParamError);
  CHECK_THROWS_AS(build_example(make_ex2(0.3, 0.4, 0.3, 1.0, 1.0, 0.0)), ParamError);
}

TEST_CASE("build_example is deterministic") {
  const auto a = build_example(make_ex2()), b = build_example(make_ex2());
  REQUIRE(a.num_edges() == b.num_edges());
  for (int e = 0; e < a.num_edges(); ++e) {
    CHECK(a.edges[e].length == b.edges[e].length);
    CHECK(a.edges[e].speed_a == b.edges[e].speed_a);
    CHECK(a.edges[e].left == b.edges[e].left);
    CHECK(a.edges[e].right == b.edges[e].right);
  }
}

TEST_CASE("Datta weights") {
  const DattaWeights w0 = datta_weights(make_ex0(), 1.3);
  for (int v = 0; v < 2; ++v)
    for (int e = 0; e < 2; ++e) CHECK(std::abs(w0.at(v, e) - 1.0) == 0.0);

  const DattaWeights w1 = datta_weights(make_ex1(), 0.0);
  for (int v = 0; v < 2; ++v)
    for (int e = 0; e < 3; ++e) CHECK(std::abs(w1.at(v, e) - 1.0) < 1e-15);

  const DattaWeights w = datta_weights(make_ex1(0.3, 0.4, 0.3), kPi / 2);
  CHECK(std::abs(w.at(0, 2) - std::exp(kI * kPi * 0.35)) < 1e-14);
  CHECK(std::abs(w.at(1, 0) - std::exp(kI * kPi * 0.15)) < 1e-14);
  CHECK(std::abs(w.at(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(w.at(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(w.at(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(w.at(1, 2) - 1.0) < 1e-15);
}

TEST_CASE("Datta weights have unit modulus") {
  for (ExampleId id : {ExampleId::Ex0, ExampleId::Ex1, ExampleId::Ex2})
    for (int i = 0; i < 33; ++i) {
      const double tau = -kPi + 2 * kPi * i / 33.0;
      const DattaWeights w = datta_weights(default_params(id), tau);
      for (int v = 0; v < w.w.rows(); ++v)
        for (int e = 0; e < w.w.cols(); ++e) CHECK(std::abs(std::abs(w.at(v, e)) - 1.0) <= 1e-14);
    }
}

TEST_CASE("text record round trip") {
  const ExampleParams p = make_ex2(0.25, 0.35, 0.4, 1.1, 0.9, 1.7);
  const ExampleParams q = params_from_text(to_text(p));
  CHECK(q.id == p.id);
  CHECK(q.l1 == p.l1);
  CHECK(q.l2 == p.l2);
  CHECK(q.l3 == p.l3);
  CHECK(q.a1 == p.a1);
  CHECK(q.a2 == p.a2);
  CHECK(q.a3 == p.a3);
  CHECK_THROWS(params_from_text("example = Ex9\n"));
}
