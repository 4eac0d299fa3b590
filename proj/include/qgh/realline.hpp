#pragma once

#include <functional>
#include <string>

#include "qgh/graph.hpp"

namespace qgh {

// samples on the periodic box [-X, X), n points
struct LineField {
  double X = 32;
  CVec f;

  int size() const { return int(f.size()); }
  double dx() const { return 2 * X / size(); }
  double x(int i) const { return -X + i * dx(); }
  // dual variable of Fourier index m (FFT order)
  double t(int m) const;
  // F^(t_m) ~ (1/sqrt(2 pi)) int F e^{-itx} dx, FFT order
  CVec fourier() const;
  double norm() const;  // L2 norm by the rectangle rule
};

LineField line_field(double X, int n, const std::function<cplx(double)>& f);
LineField from_fourier(double X, const CVec& fhat);
// | ||F||^2 - ||F^||^2 | / ||F||^2
double parseval_defect(const LineField& F);

// s(t, z) U^ = F^
struct EffectiveLineModel {
  ExampleId example = ExampleId::Ex0;
  double eps = 1;
  cplx z;
  std::function<cplx(double)> symbol;
  std::string description;
};

// difference-Laplacian models (Ex0, Ex2) and the differential model (Ex1)
EffectiveLineModel difference_model(const ExampleParams& p, double eps, cplx z);
EffectiveLineModel differential_model_ex1(const ExampleParams& p, cplx z, double sigma2);
// L (K(eps t, z) - z)
cplx dispersion_symbol(const ExampleParams& p, double eps, cplx z, double t);

struct LineDiagnostics {
  double alias_mass = 0;  // relative spectral mass of F outside |t| < pi/eps
  bool alias_warning = false;
  double min_symbol = 0;  // smallest |symbol| met on the grid
};

// U^ = F^ / (L (K(eps t, z) - z)) for |t| < pi / eps, zero beyond
LineField psi_k_apply(const ExampleParams& p, double eps, cplx z, const LineField& F, LineDiagnostics* diag = nullptr);
LineField solve_difference_model(const ExampleParams& p, double eps, cplx z, const LineField& F);
LineField solve_differential_model_ex1(const ExampleParams& p, cplx z, const LineField& F, double sigma2);
// applies a model's symbol to U (the left side of the equation)
LineField apply_symbol(const EffectiveLineModel& m, const LineField& U);

}  // namespace qgh
