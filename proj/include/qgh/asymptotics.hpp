#pragma once

#include "qgh/weyl.hpp"

namespace qgh {

// B = -M_stiff
Mat2 b_matrix(const ExampleParams& p, const FiberParams& f);

// X = [psi, psi_perp]; P, P_perp project onto psi, psi_perp in the rotated frame
struct TripleRotation {
  Mat2 X, P, P_perp;
  Vec2 psi, psi_perp;
  double mu = 0, mu_perp = 0;  // eigenvalues of eps^2 B(0)
  cplx xi;                     // kernel scalar of the example
};

// Ex1 phase xi/|xi| via the half-angle form; guards the equal-impedance point
cplx ex1_xi(const ExampleParams& p, double tau);
cplx ex1_xi_phase(const ExampleParams& p, double tau);

TripleRotation triple_rotation(const ExampleParams& p, double tau);

Mat2 rotate_triple(const Mat2& b, const Mat2& x);
Mat2 projection_transform(const Mat2& bhat, const Mat2& p, const Mat2& p_perp);

// B~ = (P Bh - P_perp)(P_perp Bh + P)^{-1} with Bh = X^* B X
Mat2 b_tilde(const ExampleParams& p, const FiberParams& f);
// Ex0 / Ex2: explicit diagonal form of B~
Mat2 b_tilde_closed(const ExampleParams& p, const FiberParams& f);

// Ex1 alpha, beta and the analytically continued delta
struct Ex1Scalars {
  cplx alpha, beta, beta_c;  // beta_c: beta with its phases conjugated
};
Ex1Scalars ex1_scalars(const ExampleParams& p, const FiberParams& f);
cplx delta_fn(const ExampleParams& p, double tau, double eps, cplx z);
cplx delta_limit(const ExampleParams& p, double tau, double eps, cplx z);

// Ex1 second swap: B' = (P_perp B~ - P)(P B~ + P_perp)^{-1} with P = diag(1, 0)
Mat2 b_prime(const ExampleParams& p, const FiberParams& f);
Mat2 b_prime_eff(const ExampleParams& p, cplx z, double tau, double eps);

Mat2 b_eff(const ExampleParams& p, cplx z, double tau, double eps);

// distance ||B~ - B~_eff|| (Ex1: primed pair), spectral norm
double b_eff_error(const ExampleParams& p, const FiberParams& f);

}  // namespace qgh
