#include "qgh/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qgh {

double MetricGraph::total_length() const {
  double s = 0;
  for (const auto& e : edges) s += e.length;
  return s;
}

MetricGraph make_graph(std::vector<EdgeSpec> edges, int num_vertices, bool check_length) {
  if (num_vertices < 1) throw ParamError("graph needs at least one vertex");
  MetricGraph g;
  g.edges = std::move(edges);
  g.vertices.resize(num_vertices);
  std::iota(g.vertices.begin(), g.vertices.end(), 0);
  for (int i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edges[i];
    if (!(e.length > 0) || !(e.speed_a > 0)) throw ParamError("edge length and speed must be positive");
    if (e.left < 0 || e.right < 0 || e.left >= num_vertices || e.right >= num_vertices)
      throw ParamError("edge endpoint refers to a missing vertex");
    if (e.left == e.right) throw ParamError("loops are not allowed; split with a degree-2 vertex");
    (e.stiffness == Stiffness::Stiff ? g.stiff_edge_ids : g.soft_edge_ids).push_back(i);
  }
  if (check_length && std::abs(g.total_length() - 1.0) > 1e-12) throw ParamError("edge lengths must sum to 1");
  return g;
}

const char* example_name(ExampleId id) {
  switch (id) {
    case ExampleId::Ex0: return "Ex0";
    case ExampleId::Ex1: return "Ex1";
    case ExampleId::Ex2: return "Ex2";
  }
  return "?";
}

ExampleId parse_example(const std::string& s) {
  if (s == "Ex0" || s == "0") return ExampleId::Ex0;
  if (s == "Ex1" || s == "1") return ExampleId::Ex1;
  if (s == "Ex2" || s == "2") return ExampleId::Ex2;
  throw ParamError("unknown example '" + s + "'");
}

double ExampleParams::stiff_length() const {
  switch (id) {
    case ExampleId::Ex0: return l1;
    case ExampleId::Ex1: return l1 + l3;
    case ExampleId::Ex2: return l3;
  }
  return 0;
}

ExampleParams make_ex0(double l1, double l2, double a1) {
  ExampleParams p;
  p.id = ExampleId::Ex0;
  p.l1 = l1, p.l2 = l2, p.l3 = 0, p.a1 = a1, p.a2 = 1, p.a3 = 1;
  validate(p);
  return p;
}

ExampleParams make_ex1(double l1, double l2, double l3, double a1, double a3) {
  ExampleParams p;
  p.id = ExampleId::Ex1;
  p.l1 = l1, p.l2 = l2, p.l3 = l3, p.a1 = a1, p.a2 = 1, p.a3 = a3;
  validate(p);
  return p;
}

ExampleParams make_ex2(double l1, double l2, double l3, double a1, double a2, double a3) {
  ExampleParams p;
  p.id = ExampleId::Ex2;
  p.l1 = l1, p.l2 = l2, p.l3 = l3, p.a1 = a1, p.a2 = a2, p.a3 = a3;
  validate(p);
  return p;
}

ExampleParams default_params(ExampleId id) {
  switch (id) {
    case ExampleId::Ex0: return make_ex0();
    case ExampleId::Ex1: return make_ex1();
    case ExampleId::Ex2: return make_ex2();
  }
  return make_ex0();
}

void validate(const ExampleParams& p) {
  const bool three = p.id != ExampleId::Ex0;
  if (!(p.l1 > 0) || !(p.l2 > 0) || (three && !(p.l3 > 0)))
    throw ParamError("example lengths must be positive");
  if (!(p.a1 > 0) || !(p.a2 > 0) || !(p.a3 > 0)) throw ParamError("example speeds must be positive");
  const double s = p.l1 + p.l2 + (three ? p.l3 : 0.0);
  if (std::abs(s - 1.0) > 1e-12) throw ParamError("example lengths must sum to 1");
}

// e1: V2 -> V1, e2: V1 -> V2, e3: V2 -> V1 (vertex 0 is V1)
MetricGraph build_example(const ExampleParams& p) {
  validate(p);
  std::vector<EdgeSpec> e;
  switch (p.id) {
    case ExampleId::Ex0:
      e.push_back({1, p.l1, p.a1, Stiffness::Stiff, 1, 0});
      e.push_back({2, p.l2, 1.0, Stiffness::Soft, 0, 1});
      break;
    case ExampleId::Ex1:
      e.push_back({1, p.l1, p.a1, Stiffness::Stiff, 1, 0});
      e.push_back({2, p.l2, 1.0, Stiffness::Soft, 0, 1});
      e.push_back({3, p.l3, p.a3, Stiffness::Stiff, 1, 0});
      break;
    case ExampleId::Ex2:
      e.push_back({1, p.l1, p.a1, Stiffness::Soft, 1, 0});
      e.push_back({2, p.l2, p.a2, Stiffness::Soft, 0, 1});
      e.push_back({3, p.l3, p.a3, Stiffness::Stiff, 1, 0});
      break;
  }
  return make_graph(std::move(e), 2);
}

std::string to_text(const ExampleParams& p) {
  validate(p);
  std::ostringstream o;
  o.precision(17);
  o << "example = " << example_name(p.id) << "\n";
  switch (p.id) {
    case ExampleId::Ex0:
      o << "lengths = " << p.l1 << ", " << p.l2 << "\nspeeds = " << p.a1 << ", 1\n";
      break;
    case ExampleId::Ex1:
      o << "lengths = " << p.l1 << ", " << p.l2 << ", " << p.l3 << "\nspeeds = " << p.a1 << ", 1, " << p.a3 << "\n";
      break;
    case ExampleId::Ex2:
      o << "lengths = " << p.l1 << ", " << p.l2 << ", " << p.l3 << "\nspeeds = " << p.a1 << ", " << p.a2 << ", "
        << p.a3 << "\n";
      break;
  }
  return o.str();
}

ExampleParams params_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line, example;
  std::vector<double> len, spd;
  auto list = [](const std::string& v) {
    std::vector<double> out;
    std::istringstream s(v);
    std::string item;
    while (std::getline(s, item, ',')) out.push_back(std::stod(item));
    return out;
  };
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    k.erase(std::remove_if(k.begin(), k.end(), ::isspace), k.end());
    if (k == "example") {
      v.erase(std::remove_if(v.begin(), v.end(), ::isspace), v.end());
      example = v;
    } else if (k == "lengths") {
      len = list(v);
    } else if (k == "speeds") {
      spd = list(v);
    } else {
      throw ParamError("unknown graph record key '" + k + "'");
    }
  }
  ExampleParams p = default_params(parse_example(example));
  const size_t ne = p.id == ExampleId::Ex0 ? 2 : 3;
  if (len.size() != ne || spd.size() != ne) throw ParamError("graph record: wrong number of lengths or speeds");
  p.l1 = len[0];
  p.l2 = len[1];
  p.a1 = spd[0];
  if (ne == 3) {
    p.l3 = len[2];
    p.a3 = spd[2];
  }
  if (p.id == ExampleId::Ex2) p.a2 = spd[1];
  else if (spd[1] != 1.0) throw ParamError("graph record: the soft edge of this example has unit speed");
  validate(p);
  return p;
}

void check_tau(double tau) {
  if (!std::isfinite(tau) || tau < -kPi || tau >= kPi) throw ParamError("tau must lie in [-pi, pi)");
}

DattaWeights unit_weights(const MetricGraph& g, double tau) {
  DattaWeights d;
  d.tau = tau;
  d.w = CMat::Zero(g.num_vertices(), g.num_edges());
  for (int i = 0; i < g.num_edges(); ++i) {
    d.w(g.edges[i].left, i) = 1.0;
    d.w(g.edges[i].right, i) = 1.0;
  }
  return d;
}

DattaWeights datta_weights(const ExampleParams& p, double tau) {
  check_tau(tau);
  DattaWeights d = unit_weights(build_example(p), tau);
  if (p.id != ExampleId::Ex0) {
    d.w(0, 2) = std::exp(kI * tau * (p.l2 + p.l3));
    d.w(1, 0) = std::exp(kI * tau * p.l3);
  }
  return d;
}

}  // namespace qgh
