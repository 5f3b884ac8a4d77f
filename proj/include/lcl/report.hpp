#pragma once

// Check-suite runners shared by the CLI and the acceptance tests: each
// produces a report of named residual rows with pinned tolerances.

#include <complex>
#include <json.hpp>
#include <string>
#include <vector>

#include "lcl/metric.hpp"

namespace lcl::report {

struct Row {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  nlohmann::json config;
  std::vector<Row> rows;

  bool pass() const;
};

// LCONTACT_TOL_SCALE multiplies every tolerance (default 1).
double tol_scale();

void add_row(Report& rep, const std::string& name, double residual,
             double tolerance);

nlohmann::json to_json(const Report& rep);

// temp file + rename
void write_atomic(const std::string& path, const nlohmann::json& j);

// catalog name, or a path to a metric JSON file
metric::MetricField resolve_metric(const std::string& spec, int dim, int q);

// "0.3", "0.3+0.1i", "-0.2i", ...
std::complex<double> parse_fiber(const std::string& s);

Report mc_check(const std::string& family, int p, int q);
Report curvature_report(const std::string& metric_spec, int dim, int q,
                        const std::vector<double>& point);
Report lemma_check(const std::string& metric_spec, int dim, int q, int samples,
                   std::uint64_t seed);
Report torsion_report(const std::string& metric_spec, int dim, int q,
                      std::complex<double> fiber, int samples, bool ricci_shift,
                      std::uint64_t seed);
Report conformal_report(const std::string& metric_spec, int dim, int q,
                        int samples, std::uint64_t seed);
Report futuretube_report(int m, int samples, std::uint64_t seed);

}  // namespace lcl::report
