#pragma once

#include "qgh/field.hpp"
#include "qgh/weyl.hpp"

namespace qgh {

// graph + weights + eps fixed; z varies per call through FiberParams
struct TripleFrame {
  MetricGraph graph;
  DattaWeights weights;
  double epsilon = 1;
  Component comp = Component::Full;

  double speed(int e) const { return edge_speed(graph.edges[e], epsilon); }
  bool active(int e) const { return in_component(graph.edges[e], comp); }
  int dim() const { return graph.num_vertices(); }

  CVec gamma0(const GraphField& u) const;
  CVec gamma1(const GraphField& u) const;
  GraphField a_max(const GraphField& u) const;
  GraphField restrict(const GraphField& u) const;

  // lift into ker(A_max - z) with Gamma0 u = data
  GraphField gamma(cplx z, const CVec& data) const;
  GraphField dirichlet_resolvent(cplx z, const GraphField& f) const;
  CMat m(cplx z) const;
};

TripleFrame make_frame(const ExampleParams& p, double tau, double epsilon, Component comp = Component::Full);

// per-edge pieces, exposed for tests
EdgeField edge_lift(double l, double c, double tau, cplx z, cplx u0, cplx ul);
EdgeField edge_dirichlet(const EdgeField& f, double c, double tau, cplx z);
EdgeField edge_operator(const EdgeField& u, double c, double tau);  // -c^2 (d/dx + i tau)^2 u

// value of the lift with end values (u0, ul) at x, no ExpField involved
cplx edge_lift_value(double l, double c, double tau, cplx z, cplx u0, cplx ul, double x);
// Dirichlet Green kernel of -c^2 (d/dx + i tau)^2 - z on [0, l]
cplx edge_green(double l, double c, double tau, cplx z, double x, double y);

// R = R_inf - gamma (C0 + C1 M)^{-1} C1 Gamma1 R_inf on the frame's component
GraphField bvp_resolvent(const TripleFrame& fr, cplx z, const CMat& c0, const CMat& c1, const GraphField& f);
// B = 0 extension (weighted Kirchhoff)
GraphField krein_resolvent(const TripleFrame& fr, cplx z, const GraphField& f);
// Gamma1 u = B Gamma0 u on the soft frame
GraphField generalized_resolvent(const TripleFrame& soft, cplx z, const CMat& b, const GraphField& f);

// kernel of the B = 0 resolvent between two edge points
cplx krein_kernel(const TripleFrame& fr, cplx z, const CMat& minv, int e, double x, int f, double y);

// exact eigenvalues of the B = 0 operator below ceiling, via
// N(lambda) = N_Dirichlet(lambda) + #positive eigenvalues of M(lambda)
std::vector<double> exact_eigenvalues(const TripleFrame& fr, int count, double lo = -1.0);

}  // namespace qgh
