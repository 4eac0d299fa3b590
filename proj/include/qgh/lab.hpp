#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgh/graph.hpp"

namespace qgh {

struct SlopeFit {
  std::vector<double> eps, err;
  double slope = 0, intercept = 0, r2 = 0;
  double lo = 1.8, hi = 2.2;
  bool pass = false;
};

// least squares on (log eps, log err)
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pairs, double lo = 1.8, double hi = 2.2);

// largest singular value of W^{1/2} (A - B) W^{-1/2}, W = diag(weights), by power iteration
double operator_norm_diff(const CMat& a, const CMat& b, const RVec& weights, int max_iter = 500, double tol = 1e-8);
double operator_norm(const CMat& a, const RVec& weights, int max_iter = 500, double tol = 1e-8);

struct SweepSpec {
  std::string tag;
  std::vector<ExampleParams> examples;
  std::vector<double> taus;
  std::vector<double> epss;  // strictly decreasing
  std::vector<cplx> zs;
  std::vector<int> resolutions{256, 512, 1024};
  int J = 10000;      // series truncation
  int modes = 16;     // stiff sine modes in the full-resolvent compression
  double line_X = 32;
  int line_n = 4096;
};

const std::vector<std::string>& experiment_tags();
// acceptance criterion number of a tag
int criterion_of(const std::string& tag);
std::vector<double> default_tau_grid(int n = 17);
std::vector<double> geometric_eps(int first_exp = 3, int last_exp = 8);
SweepSpec default_spec(const std::string& tag);
// flat key = value text; keys not given keep the tag's defaults
SweepSpec parse_config(const std::string& text);
SweepSpec load_config(const std::string& path);
void validate(const SweepSpec& s);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void write_csv(const std::string& path) const;
};

struct Report {
  std::string tag;
  int criterion = 0;
  bool pass = false;
  int point_errors = 0;
  double seconds = 0;
  std::vector<std::string> summary;
  Table table;
};

Report run_experiment(const SweepSpec& spec);

// QGH_WORKERS, else hardware concurrency
int worker_count();
// fn(i) for i < n on the worker pool; results kept in index order
void parallel_for(int n, const std::function<void(int)>& fn);

std::string fmt(double v);

}  // namespace qgh
