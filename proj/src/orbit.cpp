#include "toruslab/orbit.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "toruslab/rational.hpp"
#include "toruslab/simplex.hpp"

namespace tlab {

namespace {

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    double lx = std::log(xs[i]);
    double ly = std::log(std::max(ys[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  if (denom <= 0) throw std::invalid_argument("degenerate regression abscissae");
  return (n * sxy - sx * sy) / denom;
}

void audit_det(const Eigen::MatrixXd& B) {
  double d = B.determinant();
  if (!(std::abs(d - 1.0) < 1e-8)) {
    std::ostringstream os;
    os << "lattice basis determinant drifted to " << d;
    throw std::runtime_error(os.str());
  }
}

VecQ rat_row(const Eigen::VectorXd& v) {
  VecQ out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = rat_from_double(v[i]);
  return out;
}

// exact per-coordinate extents of a bounded polytope
void region_box(const HPolytope& P, std::vector<double>& lo, std::vector<double>& hi) {
  int d = P.dim;
  MatQ age(P.A.rows());
  VecQ bge(P.A.rows());
  for (int r = 0; r < P.A.rows(); ++r) {
    age[r] = rat_row(P.A.row(r));
    bge[r] = rat_from_double(P.b[r]);
  }
  lo.assign(d, 0.0);
  hi.assign(d, 0.0);
  for (int j = 0; j < d; ++j) {
    for (int sign : {+1, -1}) {
      LpProblem lp;
      lp.Age = age;
      lp.bge = bge;
      lp.c = VecQ(d, BigRational(0));
      lp.c[j] = sign;
      LpResult res = lp_solve(lp);
      if (res.status == LpResult::Status::Infeasible)
        throw std::invalid_argument("sampling region is empty");
      if (res.status == LpResult::Status::Unbounded)
        throw std::invalid_argument("sampling region is unbounded");
      double v = rat_to_double(res.x[j]);
      if (sign > 0)
        hi[j] = v + 1e-9;
      else
        lo[j] = v - 1e-9;
    }
  }
}

double frobenius(const MatQ& m) {
  BigRational acc(0);
  for (const auto& row : m)
    for (const auto& e : row) acc += e * e;
  return std::sqrt(rat_to_double(acc));
}

MatQ embed_block(int N, int s0, const MatQ& block) {
  MatQ g = matq_identity(N);
  for (size_t a = 0; a < block.size(); ++a)
    for (size_t b = 0; b < block.size(); ++b) g[s0 + a][s0 + b] = block[a][b];
  return g;
}

Eigen::MatrixXd matq_to_dense(const MatQ& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out(i, j) = rat_to_double(m[i][j]);
  return out;
}

VecQ flatten(const MatQ& m) {
  VecQ out;
  for (const auto& row : m)
    for (const auto& e : row) out.push_back(e);
  return out;
}

MatQ unflatten(const VecQ& v, size_t n) {
  MatQ m = matq_zero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = v[i * n + j];
  return m;
}

}  // namespace

OrbitSample sample_orbit(const TorusSpec& spec, const Eigen::MatrixXd& g,
                         const LieBox& box, int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("need a positive sample count");
  if (g.rows() != spec.N || g.cols() != spec.N)
    throw std::invalid_argument("translator has the wrong shape");
  OrbitSample out;
  out.spec = spec;
  out.g = g;
  out.seed = seed;
  out.params.reserve(n);
  out.lattices.reserve(n);
  for (int k = 0; k < n; ++k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    LieParam t = sample_lie(spec, box, rng);
    Eigen::MatrixXd B = g * torus_element(spec, t);
    audit_det(B);
    out.params.push_back(std::move(t));
    out.lattices.push_back(make_lattice(B));
  }
  return out;
}

OrbitSample sample_orbit_region(const TorusSpec& spec, const Eigen::MatrixXd& g,
                                const HPolytope& region,
                                const std::vector<std::vector<std::pair<double, double>>>& aniso_box,
                                int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("need a positive sample count");
  if (region.dim != spec.split_rank())
    throw std::invalid_argument("region dimension does not match the split rank");
  if (g.rows() != spec.N || g.cols() != spec.N)
    throw std::invalid_argument("translator has the wrong shape");
  std::vector<double> lo, hi;
  region_box(region, lo, hi);

  OrbitSample out;
  out.spec = spec;
  out.g = g;
  out.seed = seed;
  out.params.reserve(n);
  out.lattices.reserve(n);
  int d = region.dim;
  Eigen::VectorXd u(d);
  for (int k = 0; k < n; ++k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    bool found = false;
    for (long tries = 0; tries < 1000000; ++tries) {
      for (int j = 0; j < d; ++j) u[j] = rng.uniform(lo[j], hi[j]);
      if (((region.A * u - region.b).array() >= 0).all()) {
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("rejection sampling starved; region too thin");
    Eigen::VectorXd tb = spec.to_block(u);
    LieParam t;
    t.split.assign(tb.data(), tb.data() + tb.size());
    t.aniso = sample_aniso(spec, aniso_box, rng);
    Eigen::MatrixXd B = g * torus_element(spec, t);
    audit_det(B);
    out.params.push_back(std::move(t));
    out.lattices.push_back(make_lattice(B));
  }
  return out;
}

SurveyResult systole_survey(const OrbitSample& sample, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("threshold must be positive");
  SurveyResult res;
  res.n = static_cast<int>(sample.lattices.size());
  for (const auto& L : sample.lattices)
    if (systole(L) < eps) ++res.below;
  if (res.n > 0) {
    double p = static_cast<double>(res.below) / res.n;
    res.fraction = p;
    res.std_error = std::sqrt(p * (1.0 - p) / res.n);
  }
  return res;
}

double ball_volume(int dim, double r) {
  return std::pow(M_PI, dim / 2.0) * std::pow(r, dim) / std::tgamma(dim / 2.0 + 1.0);
}

SiegelResult siegel_statistic(const OrbitSample& sample, double r) {
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  if (sample.spec.N > 5)
    throw std::invalid_argument("point counting is limited to rank <= 5");
  SiegelResult res;
  res.ball_volume = ball_volume(sample.spec.N, r);
  size_t n = sample.lattices.size();
  if (n == 0) return res;
  std::vector<double> counts;
  counts.reserve(n);
  for (const auto& L : sample.lattices)
    counts.push_back(static_cast<double>(count_points(L, r)));
  double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / n;
  res.mean = mean;
  if (n > 1) {
    double ss = 0;
    for (double c : counts) ss += (c - mean) * (c - mean);
    res.std_error = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return res;
}

std::vector<Eigen::MatrixXd> lie_algebra_basis(const TorusSpec& spec) {
  // spanning directions: each split slot, then each power of theta per block
  std::vector<Eigen::MatrixXd> dirs;
  std::vector<double> traces;
  for (int v = 0; v < spec.l0; ++v) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(spec.N, spec.N);
    D(spec.block_start[v], spec.block_start[v]) = 1.0;
    dirs.push_back(D);
    traces.push_back(1.0);
  }
  for (size_t j = 0; j < spec.fields.size(); ++j) {
    const auto& f = spec.fields[j];
    int s0 = spec.block_start[spec.l0 + j];
    FieldElement pw = FieldElement::from_rational(f, BigRational(1));
    for (int k = 0; k < f->degree(); ++k) {
      MatQ rep = pw.regular_rep();
      Eigen::MatrixXd D = Eigen::MatrixXd::Zero(spec.N, spec.N);
      for (int a = 0; a < f->degree(); ++a)
        for (int b = 0; b < f->degree(); ++b) D(s0 + a, s0 + b) = rat_to_double(rep[a][b]);
      dirs.push_back(D);
      traces.push_back(D.trace());
      pw = pw * FieldElement::theta(f);
    }
  }
  size_t pivot = dirs.size();
  for (size_t i = 0; i < dirs.size(); ++i)
    if (std::abs(traces[i]) > 1e-9) { pivot = i; break; }
  if (pivot == dirs.size()) throw std::logic_error("no trace pivot direction");
  std::vector<Eigen::MatrixXd> basis;
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (i == pivot) continue;
    basis.push_back(dirs[i] - (traces[i] / traces[pivot]) * dirs[pivot]);
  }
  return basis;
}

SubalgebraReport bounded_subalgebra(const TorusSpec& spec, const TranslatorSampler& g,
                                    const std::vector<double>& sample_indices,
                                    double growth_tol) {
  if (sample_indices.size() < 4)
    throw std::invalid_argument("need at least 4 sample indices");
  for (size_t i = 0; i < sample_indices.size(); ++i) {
    if (!(sample_indices[i] > 0))
      throw std::invalid_argument("sample indices must be positive");
    if (i > 0 && !(sample_indices[i] > sample_indices[i - 1]))
      throw std::invalid_argument("sample indices must increase");
  }
  if (sample_indices.back() / sample_indices.front() < 1e3)
    throw std::invalid_argument("sample indices must span at least three decades");

  SubalgebraReport rep;
  rep.lie_basis = lie_algebra_basis(spec);
  int d = static_cast<int>(rep.lie_basis.size());
  int N = spec.N;

  std::vector<std::vector<double>> sigma(d);  // per direction, per index
  Eigen::MatrixXd V_last;
  for (double idx : sample_indices) {
    Eigen::MatrixXd gi = g(idx);
    if (gi.rows() != N || gi.cols() != N)
      throw std::invalid_argument("sampled translator has the wrong shape");
    if (std::abs(gi.determinant() - 1.0) > 1e-6)
      throw std::runtime_error("sampled translator determinant drifted");
    Eigen::MatrixXd ginv = gi.inverse();
    Eigen::MatrixXd A(N * N, d);
    for (int k = 0; k < d; ++k) {
      Eigen::MatrixXd img = gi * rep.lie_basis[k] * ginv;
      A.col(k) = Eigen::Map<Eigen::VectorXd>(img.data(), N * N);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
    for (int k = 0; k < d; ++k) sigma[k].push_back(svd.singularValues()[k]);
    V_last = svd.matrixV();
  }

  rep.exponents.resize(d);
  std::vector<double> xs(sample_indices);
  int bounded = 0;
  for (int k = 0; k < d; ++k) {
    rep.exponents[k] = loglog_slope(xs, sigma[k]);
    if (rep.exponents[k] < growth_tol) ++bounded;
  }
  rep.dimension = bounded;
  for (int c = d - bounded; c < d; ++c) {
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(N, N);
    for (int k = 0; k < d; ++k) Y += V_last(k, c) * rep.lie_basis[k];
    rep.bounded_basis.push_back(Y);
  }
  return rep;
}

std::vector<MatQ> centralizer_algebra(const std::vector<MatQ>& generators) {
  size_t n = 0;
  for (const auto& A : generators) {
    if (A.empty() || A.size() != A[0].size())
      throw std::invalid_argument("generators must be square");
    if (n == 0) n = A.size();
    if (A.size() != n) throw std::invalid_argument("generator sizes differ");
  }
  if (n == 0) throw std::invalid_argument("need at least one generator");
  // unknowns X_ab, ab = a*n + b; rows: [X,A]_{ij} = 0, then tr X = 0
  MatQ sys;
  for (const auto& A : generators) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        VecQ row(n * n, BigRational(0));
        for (size_t k = 0; k < n; ++k) {
          row[i * n + k] += A[k][j];  // X_ik A_kj
          row[k * n + j] -= A[i][k];  // -A_ik X_kj
        }
        sys.push_back(std::move(row));
      }
  }
  VecQ tr_row(n * n, BigRational(0));
  for (size_t a = 0; a < n; ++a) tr_row[a * n + a] = 1;
  sys.push_back(std::move(tr_row));

  MatQ null = matq_nullspace(std::move(sys));
  std::vector<MatQ> basis;
  basis.reserve(null.size());
  for (const auto& v : null) basis.push_back(unflatten(v, n));
  return basis;
}

bool center_check(const std::vector<MatQ>& s0_generators) {
  if (s0_generators.empty()) throw std::invalid_argument("need at least one generator");
  size_t n = s0_generators[0].size();
  std::vector<MatQ> z1 = centralizer_algebra(s0_generators);
  std::vector<MatQ> z2;
  if (!z1.empty()) z2 = centralizer_algebra(z1);

  MatQ lie_rows;  // trace-free parts of generator powers
  BigRational nq(static_cast<long>(n));
  for (const auto& g : s0_generators) {
    MatQ p = matq_identity(n);
    for (size_t k = 1; k < n; ++k) {
      p = matq_mul(p, g);
      MatQ m = p;
      BigRational tr(0);
      for (size_t i = 0; i < n; ++i) tr += p[i][i];
      BigRational shift = tr / nq;
      for (size_t i = 0; i < n; ++i) m[i][i] -= shift;
      lie_rows.push_back(flatten(m));
    }
  }
  MatQ z2_rows;
  for (const auto& m : z2) z2_rows.push_back(flatten(m));
  return matq_same_rowspan(z2_rows, lie_rows);
}

namespace {

// shared scaffolding for the worked translate families
struct GrowthCheck {
  double exponent = 0.0;
  bool divergent = false;
};

GrowthCheck conjugation_growth(const std::function<MatQ(long)>& g_of_i, const MatQ& s,
                               const std::vector<long>& indices) {
  std::vector<double> xs, ys;
  for (long i : indices) {
    MatQ g = g_of_i(i);
    MatQ conj = matq_mul(matq_mul(g, s), matq_inverse(g));
    xs.push_back(static_cast<double>(i));
    ys.push_back(frobenius(conj));
  }
  GrowthCheck out;
  out.exponent = loglog_slope(xs, ys);
  out.divergent = ys.back() > 1e3 * ys.front();
  return out;
}

std::vector<long> example_indices(double imax) {
  std::vector<long> idx;
  for (long i = 10; static_cast<double>(i) <= imax && i <= 100000000L; i *= 10)
    idx.push_back(i);
  if (idx.size() < 4)
    throw std::invalid_argument("imax must allow at least indices 10..10^4");
  return idx;
}

std::vector<double> as_doubles(const std::vector<long>& v) {
  std::vector<double> out;
  for (long x : v) out.push_back(static_cast<double>(x));
  return out;
}

void record(ExampleReport& rep, bool pass, const std::string& text) {
  rep.checks.push_back(std::string(pass ? "[pass] " : "[FAIL] ") + text);
  rep.ok = rep.ok && pass;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// unipotent with lower-left column entries (split slot feeds the field block)
MatQ ex1_translator(long i) {
  MatQ g = matq_identity(3);
  g[1][0] = BigRational(i);
  g[2][0] = BigRational(i);
  return g;
}

MatQ ex2_translator(long i, bool doubled_field = false) {
  // upper block 2x2 = i * (I + J), J the theta rep of the first block's field
  MatQ g = matq_identity(4);
  g[0][2] = BigRational(i);
  g[1][3] = BigRational(i);
  if (doubled_field) {
    g[0][3] = BigRational(2) * BigRational(i);
    g[1][2] = BigRational(i);
  }
  return g;
}

ExampleReport run_ex1(double imax) {
  ExampleReport rep;
  rep.name = "ex1";
  rep.ok = true;
  auto idx = example_indices(imax);

  RatPolynomial split = RatPolynomial::parse("x-1");
  RatPolynomial quad = RatPolynomial::parse("x^2-2");
  TorusSpec spec = build_torus(split * quad, {split, quad});
  const FieldPtr& F = spec.fields[0];

  // anisotropic, split and mixed rational points of the torus
  FieldElement unit(F, {BigRational(3), BigRational(2)});           // 3 + 2*theta, norm 1
  FieldElement half = FieldElement::from_rational(F, BigRational(1, 2));
  MatQ s_aniso = torus_rational(spec, {BigRational(1)}, {unit});
  MatQ s_split = torus_rational(spec, {BigRational(4)}, {half});
  MatQ s_mixed = torus_rational(spec, {BigRational(4)}, {unit * BigRational(1, 2)});

  struct Case { const char* label; const MatQ* s; };
  for (const Case& c : {Case{"anisotropic unit", &s_aniso}, Case{"split element", &s_split},
                        Case{"mixed element", &s_mixed}}) {
    GrowthCheck gc = conjugation_growth(ex1_translator, *c.s, idx);
    rep.growth_exponents.push_back(gc.exponent);
    record(rep, gc.divergent && std::abs(gc.exponent - 1.0) < 0.1,
           std::string("conjugate of ") + c.label + " diverges linearly (exponent " +
               fmt(gc.exponent) + ")");
  }

  auto sampler = [](double i) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3);
    g(1, 0) = i;
    g(2, 0) = i;
    return g;
  };
  SubalgebraReport sub = bounded_subalgebra(spec, sampler, as_doubles(idx));
  rep.bounded_dim = sub.dimension;
  record(rep, sub.dimension == 0, "no torus direction stays bounded (dimension " +
                                      std::to_string(sub.dimension) + ")");
  return rep;
}

ExampleReport run_ex2(double imax) {
  ExampleReport rep;
  rep.name = "ex2";
  rep.ok = true;
  auto idx = example_indices(imax);

  RatPolynomial q2 = RatPolynomial::parse("x^2-2");
  RatPolynomial q3 = RatPolynomial::parse("x^2-3");
  TorusSpec spec = build_torus(q2 * q3, {q2, q3});

  FieldElement u1(spec.fields[0], {BigRational(3), BigRational(2)});  // norm 1
  FieldElement u2(spec.fields[1], {BigRational(2), BigRational(1)});  // norm 1
  MatQ s_units = torus_rational(spec, {}, {u1, u2});
  MatQ s_scalar = torus_rational(spec, {},
                                 {FieldElement::from_rational(spec.fields[0], BigRational(2)),
                                  FieldElement::from_rational(spec.fields[1], BigRational(1, 2))});

  auto g_of_i = [](long i) { return ex2_translator(i); };
  struct Case { const char* label; const MatQ* s; };
  for (const Case& c :
       {Case{"unit pair", &s_units}, Case{"scalar pair", &s_scalar}}) {
    GrowthCheck gc = conjugation_growth(g_of_i, *c.s, idx);
    rep.growth_exponents.push_back(gc.exponent);
    record(rep, gc.divergent && std::abs(gc.exponent - 1.0) < 0.1,
           std::string("conjugate of ") + c.label + " diverges linearly (exponent " +
               fmt(gc.exponent) + ")");
  }

  auto sampler = [](double i) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
    g(0, 2) = i;
    g(1, 3) = i;
    return g;
  };
  SubalgebraReport sub = bounded_subalgebra(spec, sampler, as_doubles(idx));
  rep.bounded_dim = sub.dimension;
  record(rep, sub.dimension == 0, "no torus direction stays bounded (dimension " +
                                      std::to_string(sub.dimension) + ")");
  return rep;
}

ExampleReport run_ex3(double imax) {
  ExampleReport rep;
  rep.name = "ex3";
  rep.ok = true;
  auto idx = example_indices(imax);

  // two copies of the same quadratic block; assembled directly since the
  // product polynomial is a square
  RatPolynomial quad = RatPolynomial::parse("x^2-2");
  FactorReport fr;
  fr.product = quad * quad;
  fr.product_matches = true;
  fr.squarefree = false;
  fr.l0 = 0;
  fr.field_polys = {quad, quad};
  fr.unverified = {false, false};
  fr.ok = true;
  fr.message = "assembled directly (repeated factor)";
  TorusSpec spec = build_torus(fr);

  FieldElement u0(spec.fields[0], {BigRational(3), BigRational(2)});
  FieldElement u1(spec.fields[1], {BigRational(3), BigRational(2)});
  MatQ s = torus_rational(spec, {}, {u0, u1});  // lies in the diagonal subtorus

  // translator inside the centralizer of the diagonal subtorus
  auto g_of_i = [](long i) { return ex2_translator(i, /*doubled_field=*/true); };

  MatQ g6 = g_of_i(1000000);
  bool commutes = matq_mul(matq_mul(g6, s), matq_inverse(g6)) == s;
  rep.exact_commutation = commutes;
  record(rep, commutes, "translator centralizes the diagonal subtorus exactly");

  FieldElement v1(spec.fields[1], {BigRational(17), BigRational(12)});  // norm 1
  MatQ t_off = torus_rational(spec, {}, {u0, v1});  // off the subtorus
  GrowthCheck gc = conjugation_growth(g_of_i, t_off, idx);
  rep.growth_exponents.push_back(gc.exponent);
  record(rep, gc.divergent && std::abs(gc.exponent - 1.0) < 0.1,
         "conjugate off the subtorus diverges linearly (exponent " + fmt(gc.exponent) + ")");

  auto sampler = [](double i) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
    g(0, 2) = i;
    g(0, 3) = 2 * i;
    g(1, 2) = i;
    g(1, 3) = i;
    return g;
  };
  SubalgebraReport sub = bounded_subalgebra(spec, sampler, as_doubles(idx));
  rep.bounded_dim = sub.dimension;
  record(rep, sub.dimension == 1,
         "bounded subalgebra is a line (dimension " + std::to_string(sub.dimension) + ")");

  std::vector<MatQ> cent = centralizer_algebra({s});
  rep.centralizer_dim = static_cast<int>(cent.size());
  record(rep, cent.size() == 7,
         "centralizer of the subtorus has dimension " + std::to_string(cent.size()) +
             " in the trace-free algebra");

  rep.center_ok = center_check({s});
  record(rep, rep.center_ok, "double commutant recovers the subtorus line");
  return rep;
}

}  // namespace

ExampleReport example_suite(const std::string& name, double imax) {
  if (name == "ex1") return run_ex1(imax);
  if (name == "ex2") return run_ex2(imax);
  if (name == "ex3") return run_ex3(imax);
  throw std::invalid_argument("unknown example '" + name + "' (expected ex1|ex2|ex3)");
}

}  // namespace tlab
