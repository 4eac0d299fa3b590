#pragma once

#include "qgh/graph.hpp"

namespace qgh {

// principal root rotated into the closed upper half plane; k = +sqrt(z) on z > 0
cplx sqrt_upper(cplx z);

struct FiberParams {
  double epsilon = 1;
  double tau = 0;
  cplx z{0, 0};
  cplx k{0, 0};
};

FiberParams make_fiber(double epsilon, double tau, cplx z);

// coefficient c in -c^2 (d/dx + i tau)^2: a/eps on stiff edges, a on soft ones
double edge_speed(const EdgeSpec& e, double epsilon);

struct TrigPair {
  cplx cot, csc;
};

// overflow-safe cot/csc; PoleError when x is within 1e-8 of pi*Z
TrigPair cot_csc(cplx x);

// kappa*cot(kappa*l) and kappa*csc(kappa*l); kappa = 0 is a removable point
cplx kcot(cplx kappa, double l);
cplx kcsc(cplx kappa, double l);

enum class Component { Full, Stiff, Soft };

bool in_component(const EdgeSpec& e, Component c);

CMat m_general(const MetricGraph& g, const DattaWeights& w, const FiberParams& f,
               Component comp = Component::Full);

struct MMatrixSet {
  Mat2 m_full, m_stiff, m_soft;
  FiberParams fiber;
};

MMatrixSet m_blocks_closed(const ExampleParams& p, const FiberParams& f);

// max |full - stiff - soft| / (1 + |full|)
double check_additivity(const MMatrixSet& s);

// max |M(conj z) - M(z)^*| / (1 + |M|)
double symmetry_defect(const CMat& m_z, const CMat& m_zbar);

// smallest eigenvalue of (M - M^*) / 2i
double im_part_min_eig(const CMat& m);

}  // namespace qgh
