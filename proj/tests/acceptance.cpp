// runs every acceptance experiment with its default sweep; one line per criterion
#include <cstdio>
#include <exception>

#include "qgh/lab.hpp"

int main() {
  using namespace qgh;
  int failed = 0;
  for (const std::string& tag : experiment_tags()) {
    const int n = criterion_of(tag);
    try {
      const Report r = run_experiment(default_spec(tag));
      std::printf("Criterion %d [%s]: %s (%.1f s)\n", n, tag.c_str(), r.pass ? "PASS" : "FAIL", r.seconds);
      for (const std::string& s : r.summary) std::printf("    %s\n", s.c_str());
      if (!r.pass) ++failed;
    } catch (const std::exception& e) {
      std::printf("Criterion %d [%s]: FAIL (error: %s)\n", n, tag.c_str(), e.what());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(experiment_tags().size()) - failed, experiment_tags().size());
  return failed == 0 ? 0 : 1;
}
