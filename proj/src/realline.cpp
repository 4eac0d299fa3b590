#include "qgh/realline.hpp"

#include <cmath>
#include <unsupported/Eigen/FFT>

#include "qgh/dispersion.hpp"
#include "qgh/weyl.hpp"

namespace qgh {

namespace {

double scale(const LineField& F) { return F.dx() / std::sqrt(2 * kPi); }

void check_symbol(cplx s, double t) {
  if (!std::isfinite(std::abs(s)) || std::abs(s) < 1e-12)
    throw PoleError("model symbol vanishes at t = " + std::to_string(t));
}

// the phase e^{-i t_m X} carries the shift of the box origin to -X
cplx origin_phase(const LineField& F, int m) { return std::exp(kI * (F.t(m) * F.X)); }

LineField multiply(const LineField& F, const std::function<cplx(double)>& mult) {
  CVec fh = F.fourier();
  for (int m = 0; m < fh.size(); ++m) fh(m) *= mult(F.t(m));
  return from_fourier(F.X, fh);
}

}  // namespace

double LineField::t(int m) const {
  const int n = size();
  const int k = m < n / 2 ? m : m - n;
  return kPi * k / X;
}

CVec LineField::fourier() const {
  Eigen::FFT<double> fft;
  CVec out;
  CVec in = f;
  fft.fwd(out, in);
  for (int m = 0; m < out.size(); ++m) out(m) *= scale(*this) * origin_phase(*this, m);
  return out;
}

double LineField::norm() const { return std::sqrt(dx()) * f.norm(); }

LineField line_field(double X, int n, const std::function<cplx(double)>& f) {
  if (!(X > 0) || n < 8 || n % 2) throw ParamError("line grid needs X > 0 and an even n >= 8");
  LineField F;
  F.X = X;
  F.f.resize(n);
  for (int i = 0; i < n; ++i) F.f(i) = f(F.x(i));
  return F;
}

LineField from_fourier(double X, const CVec& fhat) {
  LineField F;
  F.X = X;
  F.f = CVec::Zero(fhat.size());
  CVec in = fhat;
  for (int m = 0; m < in.size(); ++m) in(m) /= scale(F) * origin_phase(F, m);
  Eigen::FFT<double> fft;
  CVec out;
  fft.inv(out, in);
  F.f = out;
  return F;
}

double parseval_defect(const LineField& F) {
  const double n2 = F.norm() * F.norm();
  const double h2 = F.fourier().squaredNorm() * (kPi / F.X);
  return n2 > 0 ? std::abs(n2 - h2) / n2 : std::abs(h2);
}

cplx dispersion_symbol(const ExampleParams& p, double eps, cplx z, double t) {
  return p.stiff_length() * (k_closed(p, eps * t, z, eps) - z);
}

EffectiveLineModel difference_model(const ExampleParams& p, double eps, cplx z) {
  if (!(eps > 0)) throw ParamError("epsilon must be positive");
  const cplx k = sqrt_upper(z);
  EffectiveLineModel m;
  m.example = p.id;
  m.eps = eps;
  m.z = z;
  cplx lap, c0;  // symbol = -lap * 2(cos(eps t) - 1) - c0
  switch (p.id) {
    case ExampleId::Ex0:
      lap = k / std::sin(p.l2 * k);
      c0 = p.l1 * z + 2.0 * k * std::tan(p.l2 * k / 2.0);
      m.description = "-(k/sin(l2 k)) D_eps U - (l1 z + 2k tan(l2 k/2)) U = F";
      break;
    case ExampleId::Ex2:
      lap = p.a1 * k / std::sin(p.l1 * k / p.a1);
      c0 = p.l3 * z + 2.0 * k * (p.a1 * std::tan(p.l1 * k / (2 * p.a1)) + p.a2 * std::tan(p.l2 * k / (2 * p.a2)));
      m.description = "-(a1 k/sin(l1 k/a1)) D_eps U - (l3 z + 2k(a1 tan(l1 k/2a1) + a2 tan(l2 k/2a2))) U = F";
      break;
    case ExampleId::Ex1:
      throw ParamError("Ex1 has a differential model, not a difference one");
  }
  m.symbol = [lap, c0, eps](double t) { return -lap * 2.0 * (std::cos(eps * t) - 1.0) - c0; };
  return m;
}

EffectiveLineModel differential_model_ex1(const ExampleParams& p, cplx z, double sigma2) {
  if (p.id != ExampleId::Ex1) throw ParamError("differential model belongs to Ex1");
  if (!(sigma2 > 0)) throw ParamError("sigma2 must be positive");
  const cplx k = sqrt_upper(z);
  const cplx c0 = (p.l1 + p.l3) * z + 2.0 * k * std::tan(p.l2 * k / 2.0);
  EffectiveLineModel m;
  m.example = p.id;
  m.eps = 0;
  m.z = z;
  m.symbol = [c0, sigma2](double t) { return sigma2 * t * t - c0; };
  m.description = "-sigma^2 U'' - ((l1 + l3) z + 2k tan(l2 k/2)) U = F";
  return m;
}

LineField psi_k_apply(const ExampleParams& p, double eps, cplx z, const LineField& F, LineDiagnostics* diag) {
  if (!(eps > 0)) throw ParamError("epsilon must be positive");
  CVec fh = F.fourier();
  const double cut = kPi / eps;
  double outside = 0, total = fh.squaredNorm(), smin = INFINITY;
  for (int m = 0; m < fh.size(); ++m) {
    const double t = F.t(m);
    if (t < -cut || t >= cut) {
      outside += std::norm(fh(m));
      fh(m) = 0;
      continue;
    }
    const cplx s = dispersion_symbol(p, eps, z, t);
    check_symbol(s, t);
    smin = std::min(smin, std::abs(s));
    fh(m) /= s;
  }
  if (diag) {
    diag->alias_mass = total > 0 ? std::sqrt(outside / total) : 0.0;
    diag->alias_warning = diag->alias_mass > 1e-8;
    diag->min_symbol = smin;
  }
  return from_fourier(F.X, fh);
}

LineField apply_symbol(const EffectiveLineModel& m, const LineField& U) { return multiply(U, m.symbol); }

LineField solve_difference_model(const ExampleParams& p, double eps, cplx z, const LineField& F) {
  const EffectiveLineModel m = difference_model(p, eps, z);
  return multiply(F, [&](double t) {
    const cplx s = m.symbol(t);
    check_symbol(s, t);
    return 1.0 / s;
  });
}

LineField solve_differential_model_ex1(const ExampleParams& p, cplx z, const LineField& F, double sigma2) {
  const EffectiveLineModel m = differential_model_ex1(p, z, sigma2);
  return multiply(F, [&](double t) {
    const cplx s = m.symbol(t);
    check_symbol(s, t);
    return 1.0 / s;
  });
}

}  // namespace qgh
