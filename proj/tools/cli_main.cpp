#include <CLI11.hpp>
#include <complex>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "lcl/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for L-contact structures on unit tangent bundles"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output;
  app.add_option("-o,--output", output, "write the JSON report to this path");

  std::string family = "split", metric = "flat", fiber = "0.3+0.1i";
  std::string point_csv;
  int p = 1, q = 0, dim = 3, samples = 10, m = 3;
  std::uint64_t seed = 42;
  bool no_shift = false;

  CLI::App* mc = app.add_subcommand("mc-check", "Maurer-Cartan equations");
  mc->add_option("--family", family, "split | quat");
  mc->add_option("--p", p);
  mc->add_option("--q", q);

  CLI::App* curv = app.add_subcommand("curvature", "curvature tensor identities");
  curv->add_option("--metric", metric, "catalog name or metric JSON path");
  curv->add_option("--dim", dim);
  curv->add_option("--q", q, "negative directions for catalog metrics");
  curv->add_option("--point", point_csv, "comma-separated coordinates");

  CLI::App* lemma = app.add_subcommand("lemma-check", "Levi form identity");
  lemma->add_option("--metric", metric);
  lemma->add_option("--dim", dim);
  lemma->add_option("--q", q);
  lemma->add_option("--samples", samples);
  lemma->add_option("--seed", seed);

  CLI::App* tors = app.add_subcommand("torsion", "torsion vs closed form");
  tors->add_option("--metric", metric);
  tors->add_option("--dim", dim);
  tors->add_option("--q", q);
  tors->add_option("--fiber", fiber, "complex fiber coordinate, e.g. 0.3+0.1i");
  tors->add_option("--samples", samples);
  tors->add_option("--seed", seed);
  tors->add_flag("--no-ricci-shift", no_shift);

  CLI::App* conf = app.add_subcommand("conformal-report", "conformal flatness");
  conf->add_option("--metric", metric);
  conf->add_option("--dim", dim);
  conf->add_option("--q", q);
  conf->add_option("--samples", samples);
  conf->add_option("--seed", seed);

  CLI::App* tube = app.add_subcommand("futuretube", "future light cone tube");
  tube->add_option("--m", m);
  tube->add_option("--samples", samples);
  tube->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    lcl::report::Report rep;
    if (mc->parsed()) {
      rep = lcl::report::mc_check(family, p, q);
    } else if (curv->parsed()) {
      std::vector<double> pt;
      std::stringstream ss(point_csv);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) pt.push_back(std::stod(tok));
      rep = lcl::report::curvature_report(metric, dim, q, pt);
    } else if (lemma->parsed()) {
      rep = lcl::report::lemma_check(metric, dim, q, samples, seed);
    } else if (tors->parsed()) {
      rep = lcl::report::torsion_report(metric, dim, q,
                                        lcl::report::parse_fiber(fiber),
                                        samples, !no_shift, seed);
    } else if (conf->parsed()) {
      rep = lcl::report::conformal_report(metric, dim, q, samples, seed);
    } else {
      rep = lcl::report::futuretube_report(m, samples, seed);
    }
    nlohmann::json j = lcl::report::to_json(rep);
    std::cout << j.dump(2) << std::endl;
    if (!output.empty()) lcl::report::write_atomic(output, j);
    return rep.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    nlohmann::json err = {{"tool", "lcontact-lab"}, {"error", e.what()}};
    std::cout << err.dump(2) << std::endl;
    if (!output.empty()) {
      try {
        lcl::report::write_atomic(output, err);
      } catch (...) {
      }
    }
    return 2;
  }
}
