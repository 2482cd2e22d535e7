#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toruslab/counting.hpp"
#include "toruslab/graph.hpp"
#include "toruslab/io.hpp"
#include "toruslab/orbit.hpp"
#include "toruslab/polytope.hpp"
#include "toruslab/resscalars.hpp"
#include "toruslab/rng.hpp"
#include "toruslab/torus.hpp"

namespace {

using tlab::Json;

struct GateFailure : std::exception {
  std::string what_;
  explicit GateFailure(std::string m) : what_(std::move(m)) {}
  const char* what() const noexcept override { return what_.c_str(); }
};

// config files: TOML by default, JSON accepted when the file starts with '{'
struct MirrorConfig : public CLI::ConfigBase {
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::stringstream buf;
    buf << input.rdbuf();
    std::string text = buf.str();
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::stringstream ss(text);
      return CLI::ConfigBase::from_config(ss);
    }
    Json j = Json::parse(text);
    std::vector<CLI::ConfigItem> items;
    std::function<void(const Json&, std::vector<std::string>)> walk =
        [&](const Json& node, std::vector<std::string> parents) {
          for (auto it = node.begin(); it != node.end(); ++it) {
            const Json& v = it.value();
            if (v.is_object()) {
              auto p = parents;
              p.push_back(it.key());
              walk(v, p);
              continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (v.is_array()) {
              for (const auto& e : v)
                item.inputs.push_back(e.is_string() ? e.get<std::string>() : e.dump());
            } else if (v.is_string()) {
              item.inputs.push_back(v.get<std::string>());
            } else {
              item.inputs.push_back(v.dump());
            }
            items.push_back(std::move(item));
          }
        };
    walk(j, {});
    return items;
  }
};

struct Globals {
  std::uint64_t seed = 0;
  int precision = 30;
  int workers = 1;
  std::string out;
  bool check = false;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    tlab::write_text(g.out, text);
}

void emit_json(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

std::vector<tlab::RatPolynomial> parse_factor_list(const std::string& text) {
  std::vector<tlab::RatPolynomial> factors;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    if (!cur.empty()) factors.push_back(tlab::RatPolynomial::parse(cur));
  }
  if (factors.empty()) throw std::invalid_argument("no factors given");
  return factors;
}

tlab::TorusSpec torus_from_factors(const std::string& factors_text,
                                   const std::string& poly_text, int precision) {
  auto factors = parse_factor_list(factors_text);
  tlab::RatPolynomial p;
  if (!poly_text.empty()) {
    p = tlab::parse_poly_arg(poly_text);
  } else {
    p = tlab::RatPolynomial::constant(1);
    for (const auto& f : factors) p = p * f;
  }
  return tlab::build_torus(p, factors, precision);
}

// the worked 3x3 split family: upper unipotent with entries (i, i^2, i)
Eigen::MatrixXd sl3_unipotent(double i) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(3, 3);
  u(0, 1) = i;
  u(0, 2) = i * i;
  u(1, 2) = i;
  return u;
}

// first worked example: one split slot, one real quadratic block, translator
// feeding the split column
struct Ex1Setup {
  tlab::TorusSpec spec;
  Eigen::MatrixXd g;
};
Ex1Setup ex1_setup(double i, int precision) {
  Ex1Setup s;
  tlab::RatPolynomial lin = tlab::RatPolynomial::parse("x-1");
  tlab::RatPolynomial quad = tlab::RatPolynomial::parse("x^2-2");
  s.spec = tlab::build_torus(lin * quad, {lin, quad}, precision);
  s.g = Eigen::MatrixXd::Identity(3, 3);
  s.g(1, 0) = i;
  s.g(2, 0) = i;
  return s;
}

int cmd_torus_build(const Globals& g, const std::string& factors, const std::string& poly) {
  tlab::TorusSpec spec = torus_from_factors(factors, poly, g.precision);
  emit_json(g, tlab::torus_spec_json(spec));
  return 0;
}

int cmd_polytope_volume(const Globals& g, const std::string& factors,
                        const std::string& poly, const std::string& b_text, double eps,
                        const std::string& method, long samples) {
  tlab::TorusSpec spec = torus_from_factors(factors, poly, g.precision);
  Eigen::MatrixXd B = b_text.empty() ? Eigen::MatrixXd::Identity(spec.N, spec.N)
                                     : tlab::parse_matrix_arg(b_text);
  tlab::HPolytope P = tlab::build_omega(spec, B, eps);
  Json out;
  out["dim"] = P.dim;
  out["rows"] = static_cast<int>(P.A.rows());
  tlab::BoundednessReport bd = tlab::boundedness(P);
  out["feasible"] = bd.feasible;
  out["bounded"] = bd.bounded;
  if (!bd.feasible || !bd.bounded) {
    emit_json(g, out);
    return 0;
  }
  tlab::VolumeOptions opt;
  opt.samples = samples;
  opt.seed = g.seed;
  opt.workers = g.workers;
  if (method == "exact")
    opt.method = tlab::VolumeMethod::Exact;
  else if (method == "mc")
    opt.method = tlab::VolumeMethod::MonteCarlo;
  else if (method == "auto")
    opt.method = tlab::VolumeMethod::Auto;
  else
    throw std::invalid_argument("method must be auto, exact or mc");
  tlab::PolytopeStats st = tlab::volume(P, opt);
  out["volume"] = st.volume;
  out["std_error"] = st.std_error;
  out["method"] = st.method;
  out["vertex_count"] = st.vertex_count;
  tlab::ChebyshevResult ch = tlab::inscribed_radius(P);
  out["cheb_radius"] = ch.radius;
  emit_json(g, out);
  return 0;
}

int cmd_polytope_ratio(const Globals& g, const std::string& family,
                       const std::string& omega, double imax, double eps) {
  if (family != "sl3-u")
    throw std::invalid_argument("unknown family '" + family + "' (expected sl3-u)");
  if (!(imax >= 1e3)) throw std::invalid_argument("imax must be at least 1e3");
  tlab::RatPolynomial f1 = tlab::RatPolynomial::parse("x-1");
  tlab::RatPolynomial f2 = tlab::RatPolynomial::parse("x-2");
  tlab::RatPolynomial f3 = tlab::RatPolynomial::parse("x-3");
  tlab::TorusSpec spec = tlab::build_torus(f1 * f2 * f3, {f1, f2, f3}, g.precision);

  std::function<double(double)> om;
  if (omega == "loglog")
    om = [](double i) { return std::log(std::log(i)); };
  else if (omega == "zero")
    om = [](double) { return 0.0; };
  else
    throw std::invalid_argument("omega must be loglog or zero");

  std::vector<double> is;
  for (double i = 1e3; i <= imax * (1 + 1e-9); i *= 10) is.push_back(i);
  tlab::VolumeOptions opt;
  opt.seed = g.seed;
  opt.workers = g.workers;
  auto rows = tlab::shrink_ratio_series(spec, is, sl3_unipotent, eps, om, opt);

  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({tlab::fmt_double(r.i), tlab::fmt_double(r.vol),
                     tlab::fmt_double(r.vol_shrunk), tlab::fmt_double(r.ratio),
                     tlab::fmt_double(r.cheb_radius)});
  emit(g, tlab::csv_text({"i", "vol", "vol_shrunk", "ratio", "cheb_radius"}, cells));
  if (g.check && !(rows.back().ratio >= 0.9))
    throw GateFailure("final shrink ratio " + tlab::fmt_double(rows.back().ratio) +
                      " is below 0.9");
  return 0;
}

int cmd_graph_analyze(const Globals& g, int vertices, const std::string& edges_text) {
  std::vector<std::pair<int, int>> edges;
  std::stringstream ss(edges_text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t dash = tok.find('-');
    if (dash == std::string::npos)
      throw std::invalid_argument("edge '" + tok + "' is not of the form a-b");
    int a = std::stoi(tok.substr(0, dash)), b = std::stoi(tok.substr(dash + 1));
    edges.push_back({a - 1, b - 1});
  }
  tlab::DivergenceGraph graph = tlab::make_graph(vertices, edges);
  Json out = tlab::graph_json(graph);
  tlab::UdsSets uds = tlab::enumerate_uds(graph);
  out["uds_count"] = static_cast<int>(uds.all.size());
  out["proper_uds_count"] = static_cast<int>(uds.proper.size());
  tlab::WeightSolution w = tlab::uds_weights(graph);
  out["weights_feasible"] = w.feasible;
  if (w.feasible) {
    Json xs = Json::array(), exact = Json::array();
    for (size_t i = 0; i < w.x.size(); ++i) {
      xs.push_back(w.x[i]);
      exact.push_back(tlab::rat_to_string(w.x_exact[i]));
    }
    out["weights"] = xs;
    out["weights_exact"] = exact;
    out["min_proper_sum"] = w.min_proper_sum;
    out["audit_ok"] = w.audit_ok;
  }
  emit_json(g, out);
  if (g.check) {
    bool connected = tlab::is_connected(graph);
    if (w.feasible != connected)
      throw GateFailure("weight feasibility does not match connectivity");
    if (w.feasible && !w.audit_ok) throw GateFailure("weight audit failed");
  }
  return 0;
}

int cmd_equidist_run(const Globals& g, const std::string& example, double i, int samples,
                     double eps, double systole_eps, double r) {
  if (example != "ex1")
    throw std::invalid_argument("unknown example '" + example + "' (expected ex1)");
  Ex1Setup s = ex1_setup(i, g.precision);
  tlab::HPolytope region = tlab::build_omega(s.spec, s.g, eps);
  std::vector<std::vector<std::pair<double, double>>> aniso_box = {{{-1.0, 1.0}}};
  tlab::OrbitSample sample =
      tlab::sample_orbit_region(s.spec, s.g, region, aniso_box, samples, g.seed);
  tlab::SurveyResult survey = tlab::systole_survey(sample, systole_eps);

  // point counts come from the shrunk core: samples within o(1) of the
  // boundary hold a vector of length ~eps and inflate the mean by ~1/log i
  double om = i > std::exp(1.0) ? std::log(std::log(i)) : 0.0;
  tlab::HPolytope core = tlab::build_omega(s.spec, s.g, eps + om);
  tlab::OrbitSample core_sample =
      tlab::sample_orbit_region(s.spec, s.g, core, aniso_box, samples, g.seed);
  tlab::SiegelResult siegel = tlab::siegel_statistic(core_sample, r);

  std::vector<std::vector<std::string>> rows;
  rows.push_back({std::to_string(g.seed), tlab::fmt_double(i), std::to_string(samples),
                  tlab::fmt_double(eps), tlab::fmt_double(survey.fraction),
                  tlab::fmt_double(siegel.mean), tlab::fmt_double(siegel.std_error),
                  tlab::fmt_double(siegel.ball_volume)});
  emit(g, tlab::csv_text(
              {"seed", "i", "n", "epsilon", "frac_below", "mean_count", "stderr", "ball_vol"},
              rows));
  if (g.check) {
    if (!(survey.fraction <= 0.05))
      throw GateFailure("systole failure fraction " + tlab::fmt_double(survey.fraction) +
                        " exceeds 5%");
    double rel = std::abs(siegel.mean - siegel.ball_volume) / siegel.ball_volume;
    if (!(rel <= 0.10))
      throw GateFailure("Siegel statistic off by " + tlab::fmt_double(100 * rel) + "%");
  }
  return 0;
}

int cmd_count_run(const Globals& g, const std::string& poly_text,
                  const std::string& radii_text, int m0) {
  tlab::RatPolynomial p = tlab::parse_poly_arg(poly_text);
  std::vector<double> radii = tlab::parse_schedule(radii_text);
  tlab::CountSpec spec = tlab::make_count_spec(p, radii, m0);
  tlab::CountReport rep = tlab::count_series(spec);

  std::vector<std::vector<std::string>> rows;
  for (size_t k = 0; k < radii.size(); ++k)
    rows.push_back({tlab::fmt_double(radii[k]), std::to_string(rep.counts[k]),
                    tlab::fmt_double(rep.normalized[k]),
                    tlab::fmt_double(rep.doubling_log_ratio[k])});
  emit(g, tlab::csv_text({"R", "count", "normalized", "doubling_log_ratio"}, rows));

  if (g.check) {
    tlab::FitReport fit = tlab::fit_asymptotics(rep);
    size_t defined = fit.doubling_log_ratios.size();
    if (spec.beta() == 0) {
      if (defined < 3) throw GateFailure("need three doublings for the check");
      for (size_t k = defined - 3; k < defined; ++k) {
        double v = fit.doubling_log_ratios[k];
        if (!(v >= 0.85 && v <= 1.15))
          throw GateFailure("doubling log-ratio " + tlab::fmt_double(v) +
                            " outside [0.85, 1.15]");
      }
      if (!(fit.plateau <= 1.2))
        throw GateFailure("plateau " + tlab::fmt_double(fit.plateau) + " exceeds 1.2");
    } else {
      if (!(fit.plateau <= 1.25))
        throw GateFailure("plateau " + tlab::fmt_double(fit.plateau) + " exceeds 1.25");
    }
  }
  return 0;
}

int cmd_examples_verify(const Globals& g, const std::string& name, double imax) {
  tlab::ExampleReport rep = tlab::example_suite(name, imax);
  Json out;
  out["name"] = rep.name;
  out["ok"] = rep.ok;
  out["checks"] = rep.checks;
  Json ge = Json::array();
  for (double e : rep.growth_exponents) ge.push_back(e);
  out["growth_exponents"] = ge;
  out["bounded_dimension"] = rep.bounded_dim;
  if (rep.centralizer_dim >= 0) out["centralizer_dimension"] = rep.centralizer_dim;
  if (rep.name == "ex3") {
    out["exact_commutation"] = rep.exact_commutation;
    out["center_check"] = rep.center_ok;
  }
  emit_json(g, out);
  for (const auto& line : rep.checks) std::cerr << line << "\n";
  if (!rep.ok) throw GateFailure("example checks failed for " + name);
  return 0;
}

int cmd_resscalars_check(const Globals& g, const std::string& field_text, int n, int cases,
                         int vectors) {
  tlab::RatPolynomial q = tlab::parse_poly_arg(field_text);
  tlab::FieldPtr field = tlab::NumberField::create(q, g.precision);
  tlab::GeometricEmbedding emb = tlab::geom_embedding(field, n);
  tlab::RngStream rng(g.seed, 77);

  int equi_fail = 0, margin_fail = 0;
  double worst = 0;
  for (int c = 0; c < cases; ++c) {
    tlab::FieldMat mat = tlab::random_sl(emb, rng);
    int grade = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n > 1 ? n - 1 : 1)));
    tlab::FieldMat vs;
    for (int k = 0; k < grade; ++k) vs.push_back(tlab::random_vector(emb, rng));
    tlab::EquivarianceReport er = tlab::equivariance_check(emb, mat, vs);
    if (!er.ok) ++equi_fail;
  }
  for (int c = 0; c < vectors; ++c) {
    tlab::FieldVec v = tlab::random_vector(emb, rng);
    tlab::MarginReport mr = tlab::covolume_decrease_margin(emb, v);
    if (!mr.within) ++margin_fail;
    worst = std::max(worst, mr.ratio / mr.bound);
  }
  Json out;
  out["field"] = q.to_string();
  out["N"] = n;
  out["cases"] = cases;
  out["equivariance_failures"] = equi_fail;
  out["margin_vectors"] = vectors;
  out["margin_violations"] = margin_fail;
  out["worst_ratio_over_bound"] = worst;
  emit_json(g, out);
  if (g.check && (equi_fail > 0 || margin_fail > 0))
    throw GateFailure("restriction-of-scalars checks failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for torus orbits, non-divergence polytopes and counting"};
  app.config_formatter(std::make_shared<MirrorConfig>());
  app.set_config("--config");
  app.fallthrough(true);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed for stochastic runs");
  app.add_option("--precision", g.precision, "number-field root precision (decimal digits)");
  app.add_option("--workers", g.workers, "worker threads (never affects results)");
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_flag("--check", g.check, "enforce acceptance gates (exit 4 on failure)");

  // torus build
  auto* torus = app.add_subcommand("torus", "torus assembly");
  auto* torus_build = torus->add_subcommand("build", "build a maximal torus from factors");
  std::string tb_factors, tb_poly;
  torus_build->add_option("--factors", tb_factors, "comma-separated factor polynomials")
      ->required();
  torus_build->add_option("--poly", tb_poly, "full polynomial (default: product of factors)");

  // polytope volume / ratio
  auto* poly = app.add_subcommand("polytope", "non-divergence polytopes");
  auto* pv = poly->add_subcommand("volume", "volume and inscribed radius");
  std::string pv_factors, pv_poly, pv_b, pv_method = "auto";
  double pv_eps = 1.0;
  long pv_samples = 1000000;
  pv->add_option("--factors", pv_factors, "torus factors")->required();
  pv->add_option("--poly", pv_poly, "full polynomial");
  pv->add_option("--b", pv_b, "translator matrix, rows ';'-separated");
  pv->add_option("--eps", pv_eps, "threshold epsilon");
  pv->add_option("--method", pv_method, "auto|exact|mc");
  pv->add_option("--samples", pv_samples, "Monte Carlo sample count");

  auto* pr = poly->add_subcommand("ratio", "shrink-ratio series for a named family");
  std::string pr_family = "sl3-u", pr_omega = "loglog";
  double pr_imax = 1e8, pr_eps = 10.0;
  pr->add_option("--family", pr_family, "family name (sl3-u)");
  pr->add_option("--omega", pr_omega, "shrink schedule: loglog|zero");
  pr->add_option("--imax", pr_imax, "largest index");
  pr->add_option("--eps", pr_eps, "threshold epsilon");

  // graph analyze
  auto* graph = app.add_subcommand("graph", "divergence graphs");
  auto* ga = graph->add_subcommand("analyze", "connectivity, UDS family, weights");
  int ga_vertices = 0;
  std::string ga_edges;
  ga->add_option("--vertices", ga_vertices, "vertex count")->required();
  ga->add_option("--edges", ga_edges, "edges like 1-2,2-3 (1-based)");

  // equidist run
  auto* eq = app.add_subcommand("equidist", "orbit sampling statistics");
  auto* eqr = eq->add_subcommand("run", "systole survey and Siegel statistic");
  std::string eq_example = "ex1";
  double eq_i = 1e4, eq_eps = 0.1, eq_seps = 1e-3, eq_r = 2.0;
  int eq_samples = 10000;
  eqr->add_option("--example", eq_example, "worked example (ex1)");
  eqr->add_option("--i", eq_i, "translator index");
  eqr->add_option("--samples", eq_samples, "lattice sample count");
  eqr->add_option("--eps", eq_eps, "polytope threshold for the split coordinate");
  eqr->add_option("--systole-eps", eq_seps, "systole failure threshold");
  eqr->add_option("--r", eq_r, "Siegel ball radius");

  // count run
  auto* count = app.add_subcommand("count", "characteristic-polynomial census");
  auto* cr = count->add_subcommand("run", "count matrices in norm balls");
  std::string cr_poly, cr_radii;
  int cr_m0 = 1;
  cr->add_option("--poly", cr_poly, "polynomial (expression or descending coefficients)")
      ->required();
  cr->add_option("--radii", cr_radii, "radii list, supports a,b,...,z geometric form")
      ->required();
  cr->add_option("--m0", cr_m0, "base field degree for the fit exponents");

  // examples verify
  auto* ex = app.add_subcommand("examples", "worked examples");
  auto* ev = ex->add_subcommand("verify", "run one example's checks");
  std::string ev_name;
  double ev_imax = 1e6;
  ev->add_option("name", ev_name, "ex1|ex2|ex3")->required();
  ev->add_option("--imax", ev_imax, "largest translator index");

  // resscalars check
  auto* rs = app.add_subcommand("resscalars", "restriction of scalars");
  auto* rc = rs->add_subcommand("check", "equivariance and covolume margin");
  std::string rc_field;
  int rc_n = 2, rc_cases = 200, rc_vectors = 1000;
  rc->add_option("--field", rc_field, "defining polynomial of the field")->required();
  rc->add_option("--n", rc_n, "matrix size over the field");
  rc->add_option("--cases", rc_cases, "equivariance cases");
  rc->add_option("--vectors", rc_vectors, "margin vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(torus) && torus->got_subcommand(torus_build))
      return cmd_torus_build(g, tb_factors, tb_poly);
    if (app.got_subcommand(poly) && poly->got_subcommand(pv))
      return cmd_polytope_volume(g, pv_factors, pv_poly, pv_b, pv_eps, pv_method, pv_samples);
    if (app.got_subcommand(poly) && poly->got_subcommand(pr))
      return cmd_polytope_ratio(g, pr_family, pr_omega, pr_imax, pr_eps);
    if (app.got_subcommand(graph) && graph->got_subcommand(ga))
      return cmd_graph_analyze(g, ga_vertices, ga_edges);
    if (app.got_subcommand(eq) && eq->got_subcommand(eqr))
      return cmd_equidist_run(g, eq_example, eq_i, eq_samples, eq_eps, eq_seps, eq_r);
    if (app.got_subcommand(count) && count->got_subcommand(cr))
      return cmd_count_run(g, cr_poly, cr_radii, cr_m0);
    if (app.got_subcommand(ex) && ex->got_subcommand(ev))
      return cmd_examples_verify(g, ev_name, ev_imax);
    if (app.got_subcommand(rs) && rs->got_subcommand(rc))
      return cmd_resscalars_check(g, rc_field, rc_n, rc_cases, rc_vectors);
    std::cerr << "missing subcommand\n";
    return 2;
  } catch (const GateFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
