#pragma once

#include <vector>

#include "qgh/graph.hpp"

namespace qgh {

enum class DispersionBackend { ClosedForm, Series };

struct DispersionEval {
  ExampleId example = ExampleId::Ex0;
  double tau = 0;
  cplx z;
  cplx K;
  DispersionBackend backend = DispersionBackend::ClosedForm;
  int J = 0;  // series truncation, 0 for the closed form
  cplx xi, theta, w_tau;
  double sigma2 = 0, rho = 0;
};

// theta(tau) = (A e^{-i tau} + C) / |A e^{-i tau} + C|, A = a1^2/l1, C = a3^2/l3
cplx ex1_theta(const ExampleParams& p, double tau);

// closed forms; eps only enters Ex1 through (sigma tau / eps)^2
DispersionEval k_closed_eval(const ExampleParams& p, double tau, cplx z, double eps = 1.0);
cplx k_closed(const ExampleParams& p, double tau, cplx z, double eps = 1.0);

// (1/rho^2){ z sum_{j<=J} <v,phi_j>/(mu_j - z) G(phi_j, 0) + G(v, rho) } over the soft edges
DispersionEval k_series_eval(const ExampleParams& p, double tau, cplx z, int J, double eps = 1.0);
cplx k_series(const ExampleParams& p, double tau, cplx z, int J, double eps = 1.0);

// one summand of the series, split by soft edge; exposed for tests
struct SeriesTerm {
  cplx v_phi;   // <v, phi_j>
  cplx g_phi;   // G(phi_j, 0)
  double mu;    // Dirichlet eigenvalue
};
SeriesTerm k_series_term(const ExampleParams& p, double tau, int edge, int j);

struct SumIdentity {
  double lhs, rhs, error;
};
// [0]: sum 1/((pi j)^2 - x^2), [1]: sum (-1)^j/((pi j)^2 - x^2)
std::vector<SumIdentity> verify_sum_identities(double x, long J);
// closed right sides, with their x -> 0 limits
double sum_identity_rhs(double x, bool alternating);

// beta / delta from the homogenised system forced by (0, delta)
cplx schur_frobenius(const ExampleParams& p, double tau, double eps, cplx z);

// real roots of K(tau, z) = z in [0, z_max]; a root at z = 0 is reported when K(tau, 0) = 0
std::vector<double> band_roots(const ExampleParams& p, double tau, double z_max, double eps = 1.0);
// zeros of the sin terms of K(tau, .) below z_max, sorted
std::vector<double> k_poles(const ExampleParams& p, double z_max);

// h = s (K - k^2) with s the product of the sin factors of K; h is entire in k
struct PoleFree {
  double h = 0, s = 0;
};
PoleFree pole_free(const ExampleParams& p, double tau, double k, double eps = 1.0);
// eigenvalues of the homogenised fiber operator below z_max: the roots of K = z together
// with soft Dirichlet levels that decouple from the stiff component (zeros of h with s = 0)
std::vector<double> hom_spectrum(const ExampleParams& p, double tau, double z_max, double eps = 1.0);
// K - z sampled between consecutive poles decreases everywhere
bool k_monotone(const ExampleParams& p, double tau, double z_max, double eps = 1.0, int samples = 256);

}  // namespace qgh
