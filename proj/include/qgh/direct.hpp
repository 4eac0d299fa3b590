#pragma once

#include <vector>

#include "qgh/field.hpp"
#include "qgh/weyl.hpp"

namespace qgh {

// a grid unknown: interior node (edge, x) or a vertex value (vertex >= 0)
struct NodeRef {
  int edge = -1;
  double x = 0;
  int vertex = -1;
};

// (L - z M) u = M f with L Hermitian and M diagonal (lumped quadrature weights)
struct DiscretizedOperator {
  MetricGraph graph;
  DattaWeights weights;
  FiberParams fiber;
  int resolution = 0;
  std::vector<int> intervals, offset;  // per edge; offset = first interior unknown
  std::vector<double> h;
  int vertex_offset = 0;
  std::vector<NodeRef> nodes;
  CMat L;
  RVec mass;

  int size() const { return int(nodes.size()); }
};

DiscretizedOperator assemble(const MetricGraph& g, const DattaWeights& w, const FiberParams& f, int resolution);

// nodal samples of a closed-form field; vertex entries take the common value
CVec sample(const DiscretizedOperator& op, const GraphField& u);

CVec resolvent_apply(const DiscretizedOperator& op, cplx z, const CVec& f);
// matrix of f -> u
CMat resolvent_matrix(const DiscretizedOperator& op, cplx z);
std::vector<double> eigenvalues(const DiscretizedOperator& op, int count);

// max |<Au,v> - <u,Av>| / (|u||v| ||A||) over random pairs
double symmetry_defect(const DiscretizedOperator& op, int pairs = 8, unsigned seed = 1);

struct SoftBlock {
  CMat r;             // soft nodes -> soft nodes
  RVec weights;       // soft quadrature weights
  std::vector<int> nodes;  // indices into op.nodes
};

SoftBlock sandwich_soft(const DiscretizedOperator& op, cplx z);

}  // namespace qgh
