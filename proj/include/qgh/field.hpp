#pragma once

#include <vector>

#include "qgh/graph.hpp"

namespace qgh {

// c * x^p * exp(lam * x)
struct ExpTerm {
  cplx c;
  cplx lam;
  int p = 0;
};

// closed-form function on [0, length]
struct EdgeField {
  double length = 0;
  std::vector<ExpTerm> terms;

  cplx operator()(double x) const;
  EdgeField& operator+=(const EdgeField& o);
  EdgeField& operator*=(cplx s);
};

EdgeField operator+(EdgeField a, const EdgeField& b);
EdgeField operator-(EdgeField a, const EdgeField& b);
EdgeField operator*(cplx s, EdgeField a);

EdgeField d_dx(const EdgeField& f);
// (d/dx + i tau) f
EdgeField d_tau(const EdgeField& f, double tau);
// merges terms with equal (lam, p) and drops exact zeros
void compress(EdgeField& f);

// int_0^l x^p e^{a x} dx
cplx int_xp_exp(int p, cplx a, double l);
// int f conj(g)
cplx inner(const EdgeField& f, const EdgeField& g);

struct GraphField {
  std::vector<EdgeField> e;

  GraphField& operator+=(const GraphField& o);
  GraphField& operator*=(cplx s);
};

GraphField zero_field(const MetricGraph& g);
GraphField operator+(GraphField a, const GraphField& b);
GraphField operator-(GraphField a, const GraphField& b);
GraphField operator*(cplx s, GraphField a);
cplx inner(const GraphField& f, const GraphField& g);
double norm(const GraphField& f);

// sqrt(2/l) e^{-i tau x} sin(pi j x / l) on edge e, zero elsewhere
GraphField sine_mode(const MetricGraph& g, int e, int j, double tau);

}  // namespace qgh
