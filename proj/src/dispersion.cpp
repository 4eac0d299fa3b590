#include "qgh/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "qgh/asymptotics.hpp"
#include "qgh/effective.hpp"
#include "qgh/krein.hpp"

namespace qgh {

namespace {

double germ(const ExampleParams& p, double tau, double eps) {
  if (p.id != ExampleId::Ex1) return 0.0;
  if (!(eps > 0)) throw ParamError("epsilon must be positive");
  const double t = tau / eps;
  return ex1_sigma2(p) * t * t / p.stiff_length();
}

// 2 psi^* Gamma1 on one soft edge field, soft frame conventions
cplx s_functional(const TripleFrame& fr, const Vec2& psi, int i, const EdgeField& u) {
  const EdgeSpec& e = fr.graph.edges[i];
  const double c2 = fr.speed(i) * fr.speed(i);
  const EdgeField du = d_tau(u, fr.weights.tau);
  const cplx left = fr.weights.at(e.left, i) * c2 * du(0.0);
  const cplx right = -fr.weights.at(e.right, i) * c2 * du(e.length);
  return std::sqrt(2.0) * (std::conj(psi(e.left)) * left + std::conj(psi(e.right)) * right);
}

struct SeriesSetup {
  TripleFrame fr;
  Vec2 psi;
  GraphField v;
};

SeriesSetup series_setup(const ExampleParams& p, double tau) {
  SeriesSetup s{make_frame(p, tau, 1.0, Component::Soft), triple_rotation(p, tau).psi, {}};
  CVec data = std::sqrt(2.0) * s.psi;
  s.v = s.fr.gamma(cplx(0, 0), data);
  return s;
}

SeriesTerm term(const SeriesSetup& s, int i, int j) {
  const EdgeSpec& e = s.fr.graph.edges[i];
  const GraphField phi = sine_mode(s.fr.graph, i, j, s.fr.weights.tau);
  const double m = s.fr.speed(i) * kPi * j / e.length;
  return {inner(s.v.e[i], phi.e[i]), -s_functional(s.fr, s.psi, i, phi.e[i]), m * m};
}

double ex1_impedance_gap(const ExampleParams& p) {
  const double A = p.a1 * p.a1 / p.l1, C = p.a3 * p.a3 / p.l3;
  return A + C;
}

}  // namespace

cplx ex1_theta(const ExampleParams& p, double tau) {
  const double A = p.a1 * p.a1 / p.l1, C = p.a3 * p.a3 / p.l3;
  // A e^{-i tau} + C = e^{-i tau / 2} u, u = (A + C) cos(tau/2) - i (A - C) sin(tau/2)
  const cplx u((A + C) * std::cos(tau / 2), -(A - C) * std::sin(tau / 2));
  if (std::abs(u) < 1e-10 * ex1_impedance_gap(p))
    throw PoleError("theta undefined: equal impedances at tau = -pi");
  return std::exp(-kI * (tau / 2)) * u / std::abs(u);
}

DispersionEval k_closed_eval(const ExampleParams& p, double tau, cplx z, double eps) {
  validate(p);
  check_tau(tau);
  DispersionEval r;
  r.example = p.id;
  r.tau = tau;
  r.z = z;
  r.rho = std::sqrt(p.stiff_length());
  const cplx k = sqrt_upper(z);
  const double ct = std::cos(tau);
  switch (p.id) {
    case ExampleId::Ex0:
      r.xi = std::exp(kI * tau * p.l1);
      r.w_tau = r.xi;
      r.K = (2.0 / p.l1) * (kcot(k, p.l2) - ct * kcsc(k, p.l2));
      break;
    case ExampleId::Ex1: {
      r.xi = ex1_xi(p, tau);
      r.theta = ex1_theta(p, tau);
      r.w_tau = -ex1_xi_phase(p, tau);
      r.sigma2 = ex1_sigma2(p);
      const double L = p.l1 + p.l3;
      r.K = (2.0 / L) * (kcot(k, p.l2) - r.theta.real() * kcsc(k, p.l2)) + germ(p, tau, eps);
      break;
    }
    case ExampleId::Ex2: {
      r.xi = std::exp(-kI * tau * p.l2);
      r.w_tau = r.xi;
      const cplx k1 = k / p.a1, k2 = k / p.a2;
      // a k tan(k l / 2a) = a^2 (kcsc - kcot) at kappa = k / a
      r.K = (2.0 / p.l3) * (p.a1 * p.a1 * (kcot(k1, p.l1) - ct * kcsc(k1, p.l1)) -
                            p.a2 * p.a2 * (kcsc(k2, p.l2) - kcot(k2, p.l2)));
      break;
    }
  }
  return r;
}

cplx k_closed(const ExampleParams& p, double tau, cplx z, double eps) { return k_closed_eval(p, tau, z, eps).K; }

SeriesTerm k_series_term(const ExampleParams& p, double tau, int edge, int j) {
  const SeriesSetup s = series_setup(p, tau);
  if (!s.fr.active(edge)) throw ParamError("series terms live on soft edges");
  return term(s, edge, j);
}

DispersionEval k_series_eval(const ExampleParams& p, double tau, cplx z, int J, double eps) {
  if (J < 10) throw ParamError("series truncation J must be at least 10");
  DispersionEval r = k_closed_eval(p, tau, z, eps);  // auxiliary scalars only
  const SeriesSetup s = series_setup(p, tau);
  const double L = p.stiff_length();
  cplx sum(0, 0);
  for (int i : s.fr.graph.soft_edge_ids) {
    cplx part(0, 0);
    for (int j = 1; j <= J; ++j) {
      const SeriesTerm t = term(s, i, j);
      if (std::abs(t.mu - z) < 1e-10 * (1.0 + t.mu)) throw PoleError("z hits a Dirichlet eigenvalue");
      part += t.v_phi / (t.mu - z) * t.g_phi;
    }
    sum += part;
  }
  cplx gv(0, 0);
  for (int i : s.fr.graph.soft_edge_ids) gv -= s_functional(s.fr, s.psi, i, s.v.e[i]);
  gv += L * germ(p, tau, eps);
  r.K = (z * sum + gv) / L;
  r.backend = DispersionBackend::Series;
  r.J = J;
  return r;
}

cplx k_series(const ExampleParams& p, double tau, cplx z, int J, double eps) {
  return k_series_eval(p, tau, z, J, eps).K;
}

double sum_identity_rhs(double x, bool alternating) {
  if (std::abs(x) < 1e-4) {
    // Taylor: 1/6 + x^2/90 and -1/12 - 7 x^2/720
    const double x2 = x * x;
    return alternating ? -1.0 / 12 - 7.0 * x2 / 720 : 1.0 / 6 + x2 / 90;
  }
  const double s = std::sin(x);
  if (std::abs(s) < 1e-8 * std::max(1.0, std::abs(x)) || std::abs(std::remainder(x, kPi)) < 1e-8)
    throw PoleError("x too close to pi Z");
  return alternating ? 0.5 * (1.0 / (x * x) - 1.0 / (x * s)) : 0.5 * (1.0 / (x * x) - std::cos(x) / (x * s));
}

std::vector<SumIdentity> verify_sum_identities(double x, long J) {
  if (J < 1) throw ParamError("J must be positive");
  const double r0 = sum_identity_rhs(x, false), r1 = sum_identity_rhs(x, true);
  // smallest terms first keeps the partial sums accurate at large J
  double s0 = 0, s1 = 0;
  for (long j = J; j >= 1; --j) {
    const double pj = kPi * double(j);
    const double t = 1.0 / (pj * pj - x * x);
    s0 += t;
    s1 += (j % 2 ? -t : t);
  }
  return {{s0, r0, std::abs(s0 - r0)}, {s1, r1, std::abs(s1 - r1)}};
}

cplx schur_frobenius(const ExampleParams& p, double tau, double eps, cplx z) {
  const cplx kz = k_closed(p, tau, z, eps) - z;
  if (std::abs(kz) < 1e-10) throw PoleError("K(tau, z) = z: Schur complement is singular");
  const GraphField f = zero_field(build_example(p));
  return a_hom_resolvent(p, tau, eps, z, f, cplx(1, 0)).beta;
}

PoleFree pole_free(const ExampleParams& p, double tau, double k, double eps) {
  const double z = k * k;
  const double ct = std::cos(tau);
  PoleFree r;
  switch (p.id) {
    case ExampleId::Ex0: {
      const double x = k * p.l2;
      r.s = std::sin(x);
      r.h = (2.0 / p.l1) * k * (std::cos(x) - ct) - z * r.s;
      break;
    }
    case ExampleId::Ex1: {
      const double x = k * p.l2;
      r.s = std::sin(x);
      r.h = (2.0 / (p.l1 + p.l3)) * k * (std::cos(x) - ex1_theta(p, tau).real()) + (germ(p, tau, eps) - z) * r.s;
      break;
    }
    case ExampleId::Ex2: {
      const double x1 = k * p.l1 / p.a1, x2 = k * p.l2 / p.a2;
      const double s1 = std::sin(x1), s2 = std::sin(x2);
      r.s = s1 * s2;
      r.h = (2.0 / p.l3) * k * (p.a1 * (std::cos(x1) - ct) * s2 - p.a2 * (1.0 - std::cos(x2)) * s1) - z * r.s;
      break;
    }
  }
  return r;
}

std::vector<double> k_poles(const ExampleParams& p, double z_max) {
  std::vector<double> poles;
  auto add = [&](double l, double a) {
    for (int n = 1;; ++n) {
      const double k = a * kPi * n / l;
      if (k * k > z_max) break;
      poles.push_back(k * k);
    }
  };
  if (p.id == ExampleId::Ex2) {
    add(p.l1, p.a1);
    add(p.l2, p.a2);
  } else {
    add(p.l2, 1.0);
  }
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end(), [](double a, double b) { return std::abs(a - b) < 1e-9 * (1 + a); }),
              poles.end());
  return poles;
}

namespace {

bool near_pole(const std::vector<double>& poles, double z) {
  for (double q : poles)
    if (std::abs(z - q) < 1e-8 * (1 + q)) return true;
  return false;
}

// K - z sampled strictly inside (a, b) in k; true when it decreases throughout
bool decreasing_inside(const ExampleParams& p, double tau, double eps, double a, double b, int n) {
  double prev = 0;
  for (int i = 1; i < n; ++i) {
    const double k = a + (b - a) * i / n;
    double v;
    try {
      v = (k_closed(p, tau, cplx(k * k, 0), eps) - k * k).real();
    } catch (const PoleError&) {
      continue;
    }
    if (i > 1 && v > prev) return false;
    prev = v;
  }
  return true;
}

// zeros of h(k) = s(k) (K - k^2) in (0, sqrt(z_max)], scanned between the zeros of s
std::vector<double> h_zeros(const ExampleParams& p, double tau, double z_max, double eps) {
  std::vector<double> br{0.0};
  for (double q : k_poles(p, z_max)) br.push_back(std::sqrt(q));
  br.push_back(std::sqrt(z_max));
  auto h = [&](double k) { return pole_free(p, tau, k, eps).h; };

  auto bisect = [&](double a, double b, double fa) {
    for (int it = 0; it < 200 && b - a > 2e-11 * std::max(1.0, a); ++it) {
      const double m = 0.5 * (a + b), fm = h(m);
      if (fm == 0) return m;
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };

  std::vector<double> ks;
  double last = -1;
  for (size_t i = 0; i + 1 < br.size(); ++i) {
    const double a = br[i], b = br[i + 1];
    if (b - a < 1e-12) continue;
    const int n = decreasing_inside(p, tau, eps, a, b, 64) ? 64 : 1024;
    double ka = (i == 0 ? 1e-7 * b : a), fa = h(ka);
    for (int j = 1; j <= n; ++j) {
      const double kb = a + (b - a) * j / n, fb = h(kb);
      double root = -1;
      if (fb == 0)
        root = kb;
      else if (fa != 0 && (fa > 0) != (fb > 0))
        root = bisect(ka, kb, fa);
      if (root > 0 && root - last > 1e-9 * (1 + root)) {
        ks.push_back(root);
        last = root;
      }
      ka = kb;
      fa = fb;
    }
  }
  return ks;
}

}  // namespace

std::vector<double> band_roots(const ExampleParams& p, double tau, double z_max, double eps) {
  if (!(z_max > 0) || z_max > 1e6) throw ParamError("z_max must lie in (0, 1e6]");
  const std::vector<double> poles = k_poles(p, z_max);
  std::vector<double> roots;
  if (std::abs(k_closed(p, tau, cplx(0, 0), eps)) < 1e-12) roots.push_back(0.0);
  for (double k : h_zeros(p, tau, z_max, eps))
    if (!near_pole(poles, k * k)) roots.push_back(k * k);
  return roots;
}

std::vector<double> hom_spectrum(const ExampleParams& p, double tau, double z_max, double eps) {
  if (!(z_max > 0) || z_max > 1e6) throw ParamError("z_max must lie in (0, 1e6]");
  std::vector<double> ev;
  if (std::abs(k_closed(p, tau, cplx(0, 0), eps)) < 1e-12) ev.push_back(0.0);
  for (double k : h_zeros(p, tau, z_max, eps)) ev.push_back(k * k);
  return ev;
}

bool k_monotone(const ExampleParams& p, double tau, double z_max, double eps, int samples) {
  std::vector<double> br{0.0};
  for (double q : k_poles(p, z_max)) br.push_back(std::sqrt(q));
  br.push_back(std::sqrt(z_max));
  for (size_t i = 0; i + 1 < br.size(); ++i)
    if (!decreasing_inside(p, tau, eps, br[i], br[i + 1], samples)) return false;
  return true;
}

}  // namespace qgh
