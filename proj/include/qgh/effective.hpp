#pragma once

#include "qgh/asymptotics.hpp"
#include "qgh/krein.hpp"

namespace qgh {

// psi, the effective scalar b and the dilation constants of one fiber
struct EffectiveData {
  TripleRotation rot;
  cplx b;          // B~_eff(1,1)
  double L = 0;    // stiff length
  double pi = 0;   // coupling constant sqrt(L/2)
  double germ = 0; // bounded part of the beta row: sigma^2 (tau/eps)^2 / L for Ex1, 0 otherwise
};

EffectiveData effective_data(const ExampleParams& p, double tau, double eps, cplx z);
double ex1_sigma2(const ExampleParams& p);

// boundary problems written out edge by edge
GraphField r_eff(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& f);
// same operator via the soft triple: C0 = [psi_perp^*; -b psi^*], C1 = [0; psi^*]
GraphField r_eff_triple(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& f);
// Q with R_eff = R_inf - gamma Q gamma(conj z)^*
CMat q_eff(const ExampleParams& p, double tau, double eps, cplx z);
// residual of the two boundary conditions for a soft field
double r_eff_condition_residual(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& u);

// element of H_soft + C
struct HomState {
  GraphField u;
  cplx beta{0, 0};
};

cplx inner(const HomState& a, const HomState& b);
HomState operator-(const HomState& a, const HomState& b);

HomState a_hom_resolvent(const ExampleParams& p, double tau, double eps, cplx z, const GraphField& f, cplx c);
// (A_hom u, beta row); domain_residual receives the largest violated tie
HomState a_hom_apply(const ExampleParams& p, double tau, double eps, const HomState& x, double* domain_residual);

// Strauss dilation assembled from the generalised resolvent
struct DilationBlocks {
  ExampleParams params;
  double tau = 0, eps = 1;
  cplx z;

  GraphField b11(const GraphField& f) const;
  cplx b21(const GraphField& f) const;
  GraphField b12(cplx c) const;
  cplx b22() const;
  HomState apply(const HomState& x) const;
};

DilationBlocks strauss_dilation_resolvent(const ExampleParams& p, double tau, double eps, cplx z);

// H -> H_soft + C: identity on soft edges, stiff part projected on the normalised zero-energy lift
struct PsiEmbedding {
  GraphField psi_stiff;
  TripleFrame soft;

  HomState forward(const GraphField& f) const;
  GraphField adjoint(const HomState& x) const;
};

PsiEmbedding psi_embedding(const ExampleParams& p, double tau, double eps);

}  // namespace qgh
