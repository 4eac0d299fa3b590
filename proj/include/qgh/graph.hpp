#pragma once

#include <vector>

#include "qgh/types.hpp"

namespace qgh {

enum class Stiffness { Stiff, Soft };

// edge [0, length]; left vertex sits at x = 0
struct EdgeSpec {
  int id = 0;
  double length = 0;
  double speed_a = 1;
  Stiffness stiffness = Stiffness::Soft;
  int left = 0, right = 1;
};

struct MetricGraph {
  std::vector<EdgeSpec> edges;
  std::vector<int> vertices;
  std::vector<int> stiff_edge_ids, soft_edge_ids;  // positions in `edges`

  int num_vertices() const { return int(vertices.size()); }
  int num_edges() const { return int(edges.size()); }
  double total_length() const;
};

// validates and fills the derived index sets; total length must be 1 unless
// check_length is false (used for sub-graphs and synthetic tests)
MetricGraph make_graph(std::vector<EdgeSpec> edges, int num_vertices, bool check_length = true);

enum class ExampleId { Ex0, Ex1, Ex2 };

const char* example_name(ExampleId id);
ExampleId parse_example(const std::string& s);

struct ExampleParams {
  ExampleId id = ExampleId::Ex0;
  double l1 = 0.5, l2 = 0.5, l3 = 0.0;
  double a1 = 1.0, a2 = 1.0, a3 = 1.0;

  double stiff_length() const;  // L = l1, l1 + l3, l3
};

ExampleParams make_ex0(double l1 = 0.5, double l2 = 0.5, double a1 = 1.0);
ExampleParams make_ex1(double l1 = 0.3, double l2 = 0.4, double l3 = 0.3, double a1 = 1.0, double a3 = 2.0);
ExampleParams make_ex2(double l1 = 0.3, double l2 = 0.4, double l3 = 0.3, double a1 = 1.0, double a2 = 1.0,
                       double a3 = 1.5);
ExampleParams default_params(ExampleId id);
void validate(const ExampleParams& p);

MetricGraph build_example(const ExampleParams& p);

// w(v, e) = w_V(e); zero where e is not incident to v
struct DattaWeights {
  double tau = 0;
  CMat w;

  cplx at(int v, int e) const { return w(v, e); }
};

// text record: "example = Ex1", "lengths = l1, l2, l3", "speeds = a1, a2, a3" in edge order
std::string to_text(const ExampleParams& p);
ExampleParams params_from_text(const std::string& text);

void check_tau(double tau);
DattaWeights unit_weights(const MetricGraph& g, double tau);
DattaWeights datta_weights(const ExampleParams& p, double tau);

}  // namespace qgh
