#include "qgh/field.hpp"

#include <cmath>

namespace qgh {

cplx EdgeField::operator()(double x) const {
  cplx s = 0;
  for (const auto& t : terms) s += t.c * std::pow(x, t.p) * std::exp(t.lam * x);
  return s;
}

EdgeField& EdgeField::operator+=(const EdgeField& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  compress(*this);
  return *this;
}

EdgeField& EdgeField::operator*=(cplx s) {
  for (auto& t : terms) t.c *= s;
  return *this;
}

EdgeField operator+(EdgeField a, const EdgeField& b) { return a += b; }
EdgeField operator-(EdgeField a, const EdgeField& b) { return a += -1.0 * b; }
EdgeField operator*(cplx s, EdgeField a) { return a *= s; }

EdgeField d_dx(const EdgeField& f) {
  EdgeField d{f.length, {}};
  for (const auto& t : f.terms) {
    d.terms.push_back({t.c * t.lam, t.lam, t.p});
    if (t.p > 0) d.terms.push_back({t.c * double(t.p), t.lam, t.p - 1});
  }
  compress(d);
  return d;
}

EdgeField d_tau(const EdgeField& f, double tau) {
  EdgeField d = d_dx(f);
  d += (kI * tau) * f;
  return d;
}

void compress(EdgeField& f) {
  std::vector<ExpTerm> out;
  for (const auto& t : f.terms) {
    bool merged = false;
    for (auto& o : out)
      if (o.p == t.p && std::abs(o.lam - t.lam) <= 1e-15 * (1 + std::abs(t.lam))) {
        o.c += t.c;
        merged = true;
        break;
      }
    if (!merged) out.push_back(t);
  }
  std::erase_if(out, [](const ExpTerm& t) { return t.c == 0.0; });
  f.terms = std::move(out);
}

cplx int_xp_exp(int p, cplx a, double l) {
  const cplx al = a * l;
  if (std::abs(al) < 0.5) {
    // sum_n a^n l^{n+p+1} / (n! (n+p+1))
    cplx s = 0, term = std::pow(l, p + 1);
    for (int n = 0; n < 40; ++n) {
      const cplx add = term / double(n + p + 1);
      s += add;
      if (std::abs(add) < 1e-18 * std::abs(s)) break;
      term *= al / double(n + 1);
    }
    return s;
  }
  const cplx e = std::exp(al);
  cplx ip = (e - 1.0) / a;
  for (int q = 1; q <= p; ++q) ip = (std::pow(l, q) * e - double(q) * ip) / a;
  return ip;
}

cplx inner(const EdgeField& f, const EdgeField& g) {
  cplx s = 0;
  for (const auto& a : f.terms)
    for (const auto& b : g.terms) s += a.c * std::conj(b.c) * int_xp_exp(a.p + b.p, a.lam + std::conj(b.lam), f.length);
  return s;
}

GraphField& GraphField::operator+=(const GraphField& o) {
  for (size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
  return *this;
}

GraphField& GraphField::operator*=(cplx s) {
  for (auto& f : e) f *= s;
  return *this;
}

GraphField zero_field(const MetricGraph& g) {
  GraphField f;
  for (const auto& e : g.edges) f.e.push_back({e.length, {}});
  return f;
}

GraphField operator+(GraphField a, const GraphField& b) { return a += b; }
GraphField operator-(GraphField a, const GraphField& b) {
  for (size_t i = 0; i < a.e.size(); ++i) a.e[i] = a.e[i] - b.e[i];
  return a;
}
GraphField operator*(cplx s, GraphField a) { return a *= s; }

cplx inner(const GraphField& f, const GraphField& g) {
  cplx s = 0;
  for (size_t i = 0; i < f.e.size(); ++i) s += inner(f.e[i], g.e[i]);
  return s;
}

double norm(const GraphField& f) { return std::sqrt(std::max(0.0, inner(f, f).real())); }

GraphField sine_mode(const MetricGraph& g, int e, int j, double tau) {
  GraphField f = zero_field(g);
  const double l = g.edges[e].length, q = kPi * j / l, a = std::sqrt(2.0 / l);
  // sin(qx) = (e^{iqx} - e^{-iqx}) / 2i
  f.e[e].terms = {{a / (2.0 * kI), kI * (q - tau), 0}, {-a / (2.0 * kI), -kI * (q + tau), 0}};
  return f;
}

}  // namespace qgh
