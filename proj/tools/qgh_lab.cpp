// experiment driver: one verb per family of checks, CSV + summary output
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "qgh/dispersion.hpp"
#include "qgh/lab.hpp"
#include "qgh/realline.hpp"
#include "qgh/weyl.hpp"

using namespace qgh;
namespace fs = std::filesystem;

namespace {

const std::map<std::string, std::vector<std::string>>& verbs() {
  static const std::map<std::string, std::vector<std::string>> v{
      {"mmatrix", {"additivity", "herglotz"}},
      {"resolvent", {"krein_vs_direct", "dilation"}},
      {"converge", {"gen_res_rate", "full_res_rate"}},
      {"bands", {"bands"}},
      {"dispersion", {"dispersion_series", "schur_check"}},
      {"line", {"line_models"}},
      {"verify-appendix", {"btilde_identity", "beff_rate", "sum_identities"}},
  };
  return v;
}

void export_mmatrix(const SweepSpec& s, const std::string& dir) {
  Table t;
  t.header = {"example", "eps", "tau", "re_z", "im_z", "block", "row", "col", "re", "im"};
  for (const auto& p : s.examples)
    for (double eps : s.epss)
      for (double tau : s.taus)
        for (cplx z : s.zs) {
          const MMatrixSet m = m_blocks_closed(p, make_fiber(eps, tau, z));
          const std::pair<const char*, const Mat2*> blocks[3] = {
              {"full", &m.m_full}, {"stiff", &m.m_stiff}, {"soft", &m.m_soft}};
          for (auto [name, b] : blocks)
            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j)
                t.rows.push_back({example_name(p.id), fmt(eps), fmt(tau), fmt(z.real()), fmt(z.imag()), name,
                                  std::to_string(i), std::to_string(j), fmt((*b)(i, j).real()),
                                  fmt((*b)(i, j).imag())});
        }
  t.write_csv(dir + "/mmatrix.csv");
}

void export_bands(const SweepSpec& s, const std::string& dir) {
  Table t;
  t.header = {"example", "tau", "band_index", "z_root"};
  for (const auto& p : s.examples)
    for (double tau : s.taus) {
      const auto r = band_roots(p, tau, 400.0, s.epss.front());
      for (size_t i = 0; i < r.size(); ++i)
        t.rows.push_back({example_name(p.id), fmt(tau), std::to_string(i + 1), fmt(r[i])});
    }
  t.write_csv(dir + "/band_roots.csv");
}

void export_dispersion(const SweepSpec& s, const std::string& dir) {
  Table t;
  t.header = {"example", "tau", "re_z", "im_z", "backend", "J", "re_K", "im_K"};
  const double eps = s.epss.front();
  for (const auto& p : s.examples)
    for (double tau : s.taus)
      for (cplx z : s.zs) {
        const cplx kc = k_closed(p, tau, z, eps);
        t.rows.push_back({example_name(p.id), fmt(tau), fmt(z.real()), fmt(z.imag()), "closed", "0", fmt(kc.real()),
                          fmt(kc.imag())});
        const cplx ks = k_series(p, tau, z, 1000, eps);
        t.rows.push_back({example_name(p.id), fmt(tau), fmt(z.real()), fmt(z.imag()), "series", "1000",
                          fmt(ks.real()), fmt(ks.imag())});
      }
  t.write_csv(dir + "/dispersion_samples.csv");
}

void export_line(const SweepSpec& s, const std::string& dir) {
  Table prof, sym;
  prof.header = {"example", "eps", "x", "re_U", "im_U"};
  sym.header = {"example", "eps", "t", "re_symbol", "im_symbol"};
  const LineField F = line_field(s.line_X, s.line_n, [](double x) { return cplx(std::exp(-x * x), 0); });
  const double eps = s.epss.front();
  const cplx z = s.zs.front();
  for (const auto& p : s.examples) {
    const LineField u = psi_k_apply(p, eps, z, F);
    for (int i = 0; i < u.size(); i += 8)
      prof.rows.push_back({example_name(p.id), fmt(eps), fmt(u.x(i)), fmt(u.f(i).real()), fmt(u.f(i).imag())});
    for (int m = 0; m < F.size(); m += 8) {
      const double t = F.t(m);
      if (eps * t < -kPi || eps * t >= kPi) continue;
      const cplx v = dispersion_symbol(p, eps, z, t);
      sym.rows.push_back({example_name(p.id), fmt(eps), fmt(t), fmt(v.real()), fmt(v.imag())});
    }
  }
  prof.write_csv(dir + "/line_profile.csv");
  sym.write_csv(dir + "/line_symbol.csv");
}

int run_verb(const std::string& verb, const std::string& config, const std::string& tag, const std::string& out) {
  std::vector<SweepSpec> specs;
  const auto& allowed = verbs().at(verb);
  if (!config.empty()) {
    specs.push_back(load_config(config));
    if (std::find(allowed.begin(), allowed.end(), specs.back().tag) == allowed.end())
      throw ParamError("tag '" + specs.back().tag + "' does not belong to verb " + verb);
  } else if (!tag.empty()) {
    if (std::find(allowed.begin(), allowed.end(), tag) == allowed.end())
      throw ParamError("tag '" + tag + "' does not belong to verb " + verb);
    specs.push_back(default_spec(tag));
  } else {
    for (const auto& t : allowed) specs.push_back(default_spec(t));
  }
  if (!out.empty()) fs::create_directories(out);

  bool all = true;
  std::ostringstream summary;
  for (const auto& s : specs) {
    const Report r = run_experiment(s);
    all = all && r.pass;
    char head[160];
    std::snprintf(head, sizeof head, "[%s] criterion %d: %s (%.1f s)", r.tag.c_str(), r.criterion,
                  r.pass ? "PASS" : "FAIL", r.seconds);
    summary << head << "\n";
    for (const auto& l : r.summary) summary << "  " << l << "\n";
    if (!out.empty()) r.table.write_csv(out + "/" + r.tag + ".csv");
  }
  if (!out.empty()) {
    const SweepSpec& s = specs.front();
    if (verb == "mmatrix") export_mmatrix(s, out);
    if (verb == "bands") export_bands(s, out);
    if (verb == "dispersion") export_dispersion(s, out);
    if (verb == "line") export_line(s, out);
    std::ofstream(out + "/summary.txt") << summary.str();
  }
  std::cout << summary.str();
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum graph homogenisation lab"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "list experiment tags");

  std::string config, tag, out;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [verb, tags] : verbs()) {
    CLI::App* sc = app.add_subcommand(verb, "run: " + [&] {
      std::string s;
      for (const auto& t : tags) s += (s.empty() ? "" : ", ") + t;
      return s;
    }());
    sc->add_option("--config", config, "flat key=value experiment file")->check(CLI::ExistingFile);
    sc->add_option("--tag", tag, "single experiment of this verb");
    sc->add_option("--out", out, "directory for CSV and summary output");
    subs[verb] = sc;
  }
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& t : experiment_tags()) {
      std::string verb;
      for (const auto& [v, ts] : verbs())
        if (std::find(ts.begin(), ts.end(), t) != ts.end()) verb = v;
      std::printf("%-18s criterion %2d  verb %s\n", t.c_str(), criterion_of(t), verb.c_str());
    }
    return 0;
  }
  for (const auto& [verb, sc] : subs) {
    if (!sc->parsed()) continue;
    try {
      return run_verb(verb, config, tag, out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  std::cout << app.help();
  return 2;
}
