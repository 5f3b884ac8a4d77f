#include "lcl/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "lcl/futuretube.hpp"
#include "lcl/lcontact.hpp"
#include "lcl/liemodel.hpp"
#include "lcl/utbundle.hpp"

namespace lcl::report {

using Eigen::VectorXd;
using std::complex;

bool Report::pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

double tol_scale() {
  const char* env = std::getenv("LCONTACT_TOL_SCALE");
  if (!env) return 1.0;
  double s = std::atof(env);
  if (!(s > 0.0)) throw std::invalid_argument("LCONTACT_TOL_SCALE must be > 0");
  return s;
}

void add_row(Report& rep, const std::string& name, double residual,
             double tolerance) {
  double tol = tolerance * tol_scale();
  rep.rows.push_back({name, residual, tol, residual <= tol});
}

nlohmann::json to_json(const Report& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"name", r.name},
                    {"status", r.pass ? "pass" : "fail"},
                    {"residual", r.residual},
                    {"tolerance", r.tolerance}});
  return {{"tool", "lcontact-lab"},
          {"version", "0.1.0"},
          {"config", rep.config},
          {"rows", rows},
          {"pass", rep.pass()}};
}

void write_atomic(const std::string& path, const nlohmann::json& j) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

metric::MetricField resolve_metric(const std::string& spec, int dim, int q) {
  static const std::set<std::string> names = {
      "flat", "conformal", "sphere", "hyperbolic", "product_spheres",
      "random_poly"};
  if (names.count(spec)) {
    metric::CatalogParams cp;
    cp.dim = dim;
    cp.q = q;
    if (spec == "conformal")
      cp.poly = {0.0, 0.3, -0.2, 0.1, 0.05, 0.1, -0.08, 0.04, -0.03};
    if (spec == "product_spheres") {
      cp.dim = dim / 2;
      cp.dim2 = dim - cp.dim;
    }
    return metric::catalog(spec, cp);
  }
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("unknown metric: " + spec);
  nlohmann::json cfg = nlohmann::json::parse(in);
  return metric::metric_from_json(cfg);
}

complex<double> parse_fiber(const std::string& s) {
  std::string t = s;
  if (t.empty()) throw std::invalid_argument("empty fiber coordinate");
  bool has_i = t.back() == 'i';
  if (has_i) t.pop_back();
  // split at the last +/- that is not a leading sign or an exponent sign
  size_t split = std::string::npos;
  for (size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  try {
    if (!has_i) return {std::stod(t), 0.0};
    if (split == std::string::npos) {
      if (t.empty() || t == "+") return {0.0, 1.0};
      if (t == "-") return {0.0, -1.0};
      return {0.0, std::stod(t)};
    }
    std::string im = t.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return {std::stod(t.substr(0, split)), std::stod(im)};
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse fiber coordinate: " + s);
  }
}

Report mc_check(const std::string& family, int p, int q) {
  liemodel::Family fam;
  if (family == "split")
    fam = liemodel::Family::Split;
  else if (family == "quat")
    fam = liemodel::Family::Quat;
  else
    throw std::invalid_argument("family must be split or quat");
  Report rep;
  rep.config = {{"subcommand", "mc-check"}, {"family", family}, {"p", p},
                {"q", q}};
  liemodel::StructureConstants sc = liemodel::structure_constants(fam, p, q);
  add_row(rep, "bracket-closure", sc.closure_residual, 1e-12);
  add_row(rep, "maurer-cartan", liemodel::mc_residual(fam, p, q), 1e-12);
  add_row(rep, "jacobi", liemodel::jacobi_residual(sc), 1e-10);
  return rep;
}

Report curvature_report(const std::string& metric_spec, int dim, int q,
                        const std::vector<double>& point) {
  metric::MetricField M = resolve_metric(metric_spec, dim, q);
  VectorXd x(M.dim);
  if (point.empty()) {
    for (int i = 0; i < M.dim; ++i)
      x(i) = 0.5 * (M.chart[i][0] + M.chart[i][1]);
  } else {
    if (static_cast<int>(point.size()) != M.dim)
      throw std::invalid_argument("point dimension mismatch");
    for (int i = 0; i < M.dim; ++i) x(i) = point[i];
  }
  Eigen::MatrixXd g = metric::metric_at(M, x);
  if (!(g(0, 0) > 0.0))
    throw std::invalid_argument(
        "cannot normalize the first coordinate direction at this point");
  VectorXd u = VectorXd::Zero(M.dim);
  u(0) = 1.0 / std::sqrt(g(0, 0));
  metric::CurvatureData C = metric::riemann(M, x, metric::adapt_frame(M, x, u));

  int d = M.dim;
  double antisym = 0.0, bianchi = 0.0, pair_sym = 0.0, ric_sym = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          antisym = std::max(antisym,
                             std::abs(C.Riem(i, j, k, l) + C.Riem(i, j, l, k)));
          bianchi = std::max(bianchi,
                             std::abs(C.Riem(i, j, k, l) + C.Riem(i, k, l, j) +
                                      C.Riem(i, l, j, k)));
          double lo = M.sig.eps[i] * C.Riem(i, j, k, l);
          double sw = M.sig.eps[k] * C.Riem(k, l, i, j);
          pair_sym = std::max(pair_sym, std::abs(lo - sw));
        }
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      ric_sym = std::max(ric_sym, std::abs(C.RicStd(j, k) - C.RicStd(k, j)));

  Report rep;
  rep.config = {{"subcommand", "curvature"}, {"metric", metric_spec},
                {"dim", M.dim}};
  add_row(rep, "riemann-antisymmetry", antisym, 1e-9);
  add_row(rep, "first-bianchi", bianchi, 1e-9);
  add_row(rep, "pair-symmetry", pair_sym, 1e-8);
  add_row(rep, "ricci-symmetry", ric_sym, 1e-9);
  return rep;
}

Report lemma_check(const std::string& metric_spec, int dim, int q, int samples,
                   std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  metric::MetricField M = resolve_metric(metric_spec, dim, q);
  utbundle::TangentPatch T = utbundle::make_tangent_patch(M);
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    auto [x, u] = utbundle::sample_unit(T, rng);
    worst = std::max(worst, utbundle::levi_lemma_check(T, x, u));
  }
  Report rep;
  rep.config = {{"subcommand", "lemma-check"}, {"metric", metric_spec},
                {"samples", samples}, {"seed", seed}};
  add_row(rep, "levi-lemma", worst, 1e-8);
  return rep;
}

Report torsion_report(const std::string& metric_spec, int dim, int q,
                      complex<double> fiber, int samples, bool ricci_shift,
                      std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  metric::MetricField M = resolve_metric(metric_spec, dim, q);
  lcontact::FrameBundlePatch P = lcontact::make_patch(M);
  SplitMix64 rng(seed);
  double dO = 0.0, dP = 0.0, dQ = 0.0, leak = 0.0;
  for (int s = 0; s < samples; ++s) {
    VectorXd p = lcontact::sample_point(P, rng);
    p(P.d + P.D) = fiber.real();
    p(P.d + P.D + 1) = fiber.imag();
    lcontact::TorsionReport t = lcontact::torsion_oracle(P, p, ricci_shift);
    dO = std::max(dO, t.dO);
    dP = std::max(dP, t.dP);
    dQ = std::max(dQ, t.dQ);
    leak = std::max(leak, t.leakage);
  }
  Report rep;
  rep.config = {{"subcommand", "torsion"}, {"metric", metric_spec},
                {"fiber", {fiber.real(), fiber.imag()}},
                {"samples", samples}, {"ricci_shift", ricci_shift},
                {"seed", seed}};
  add_row(rep, "torsion-O", dO, 1e-6);
  add_row(rep, "torsion-P", dP, 1e-6);
  add_row(rep, "torsion-Q", dQ, 1e-6);
  add_row(rep, "leakage", leak, 1e-6);
  return rep;
}

Report conformal_report(const std::string& metric_spec, int dim, int q,
                        int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  metric::MetricField M = resolve_metric(metric_spec, dim, q);
  lcontact::ConformalRow row =
      lcontact::conformal_flatness_report(metric_spec, M, samples, seed);
  Report rep;
  rep.config = {{"subcommand", "conformal-report"}, {"metric", metric_spec},
                {"samples", samples}, {"seed", seed}};
  // recorded values; only the numeric/closed-form agreement is gated
  add_row(rep, "weyl-norm", row.weyl, 1e9);
  add_row(rep, "trace-adjusted-norm", row.c_adjusted, 1e9);
  add_row(rep, "q-num", row.q_num, 1e9);
  add_row(rep, "q-relative-gap",
          std::abs(row.q_num - row.q_formula) / (1.0 + row.q_formula), 1e-4);
  return rep;
}

Report futuretube_report(int m, int samples, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  SplitMix64 rng(seed);
  double on_surface = 0.0, round_trip = 0.0, neg_eig = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXcd z = futuretube::sample_surface(m, rng);
    on_surface = std::max(on_surface, std::abs(futuretube::rho(z)));
    futuretube::LeafCoord lc = futuretube::leaf_coordinates(z);
    Eigen::VectorXcd back = futuretube::leaf_action(
        futuretube::leaf_inclusion(lc.t, lc.u), lc.c);
    round_trip = std::max(round_trip, (back - z).norm());
    VectorXd ev = futuretube::transverse_levi_eigenvalues(z);
    neg_eig = std::max(neg_eig, std::max(0.0, -ev.minCoeff()));
  }
  SplitMix64 rng2(seed + 1);
  Eigen::VectorXcd z = futuretube::sample_surface(m, rng2);
  double r3 = futuretube::flow_residual(z, 1e-3);
  double r4 = futuretube::flow_residual(z, 1e-4);
  double decay = std::abs(r3 / r4 - 100.0) / 100.0;

  Report rep;
  rep.config = {{"subcommand", "futuretube"}, {"m", m}, {"samples", samples},
                {"seed", seed}};
  add_row(rep, "on-surface", on_surface, 1e-12);
  add_row(rep, "round-trip", round_trip, 1e-12);
  add_row(rep, "transverse-positivity", neg_eig, 1e-12);
  add_row(rep, "flow-quadratic-decay", decay, 0.1);
  return rep;
}

}  // namespace lcl::report
