#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "toruslab/orbit.hpp"

using namespace tlab;

static BigRational Q(long long n, long long d = 1) { return BigRational(n, d); }

static TorusSpec ex1_spec() {
  return build_torus(RatPolynomial::parse("(x-1)(x^2-2)"),
                     {RatPolynomial::parse("x-1"), RatPolynomial::parse("x^2-2")});
}

static TorusSpec ex3_spec() {
  RatPolynomial quad = RatPolynomial::parse("x^2-2");
  FactorReport rep;
  rep.product = quad * quad;
  rep.product_matches = true;
  rep.squarefree = false;
  rep.l0 = 0;
  rep.field_polys = {quad, quad};
  rep.unverified = {false, false};
  rep.ok = true;
  rep.message = "assembled directly (repeated factor)";
  return build_torus(rep);
}

static MatQ ex3_s(const TorusSpec& spec) {
  FieldElement u0(spec.fields[0], {Q(3), Q(2)});
  FieldElement u1(spec.fields[1], {Q(3), Q(2)});
  return torus_rational(spec, {}, {u0, u1});
}

static MatQ ex3_translator(long i) {
  MatQ g = matq_identity(4);
  g[0][2] = Q(i);
  g[0][3] = Q(2 * i);
  g[1][2] = Q(i);
  g[1][3] = Q(i);
  return g;
}

static Eigen::MatrixXd ex1_translator(double i) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3);
  g(1, 0) = i;
  g(2, 0) = i;
  return g;
}

TEST_CASE("lie algebra basis spans the torus directions") {
  TorusSpec s1 = ex1_spec();
  auto b1 = lie_algebra_basis(s1);
  CHECK(b1.size() == 2);  // rank of a maximal torus in SL3
  for (const auto& X : b1) CHECK(std::abs(X.trace()) < 1e-9);

  TorusSpec s2 = build_torus(RatPolynomial::parse("(x^2-2)(x^2-3)"),
                             {RatPolynomial::parse("x^2-2"),
                              RatPolynomial::parse("x^2-3")});
  auto b2 = lie_algebra_basis(s2);
  CHECK(b2.size() == 3);
  // independence
  Eigen::MatrixXd flat(static_cast<int>(b2.size()), 16);
  for (size_t k = 0; k < b2.size(); ++k)
    flat.row(static_cast<int>(k)) =
        Eigen::Map<const Eigen::VectorXd>(b2[k].data(), 16).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat);
  CHECK(svd.singularValues()[2] > 1e-9);
}

TEST_CASE("centralizer algebra dimensions") {
  MatQ diag = matq_zero(3, 3);
  diag[0][0] = 1;
  diag[1][1] = 2;
  diag[2][2] = 3;
  auto c = centralizer_algebra({diag});
  CHECK(c.size() == 2);  // trace-free diagonal
  for (const auto& X : c) {
    CHECK(matq_mul(X, diag) == matq_mul(diag, X));
    BigRational tr(0);
    for (int i = 0; i < 3; ++i) tr += X[i][i];
    CHECK(tr == 0);
  }

  auto full = centralizer_algebra({matq_identity(2)});
  CHECK(full.size() == 3);  // all of the trace-free 2x2 matrices

  MatQ e12 = matq_zero(2, 2);
  e12[0][1] = 1;
  CHECK(centralizer_algebra({e12}).size() == 1);
}

TEST_CASE("double commutant test") {
  MatQ diag = matq_zero(3, 3);
  diag[0][0] = 1;
  diag[1][1] = 2;
  diag[2][2] = 3;
  CHECK(center_check({diag}));

  CHECK(center_check({matq_identity(2)}));

  // a non-commutative generator pair is not Lie data of a torus
  MatQ e12 = matq_zero(2, 2), e21 = matq_zero(2, 2);
  e12[0][1] = 1;
  e21[1][0] = 1;
  CHECK_FALSE(center_check({e12, e21}));
}

TEST_CASE("repeated-factor torus: exact commutation and commutant size") {
  TorusSpec spec = ex3_spec();
  CHECK(spec.N == 4);
  CHECK(spec.fields.size() == 2);
  MatQ s = ex3_s(spec);
  CHECK(matq_det(s) == Q(1));

  for (long i : {1L, 7L, 1000000L}) {
    MatQ g = ex3_translator(i);
    CHECK(matq_mul(g, s) == matq_mul(s, g));
  }

  auto cz = centralizer_algebra({s});
  CHECK(cz.size() == 7);  // gl2 x gl2 cut to trace zero
  CHECK(center_check({s}));
}

TEST_CASE("bounded subalgebra: full under the identity, one direction for the doubled block") {
  TorusSpec s1 = ex1_spec();
  std::vector<double> idx = {10, 1e2, 1e3, 1e4, 1e5};
  auto ident = [](double) { return Eigen::MatrixXd::Identity(3, 3); };
  SubalgebraReport full = bounded_subalgebra(s1, ident, idx);
  CHECK(full.dimension == 2);
  for (double e : full.exponents) CHECK(std::abs(e) < 0.05);

  SubalgebraReport none = bounded_subalgebra(s1, ex1_translator, idx);
  CHECK(none.dimension == 0);

  TorusSpec s3 = ex3_spec();
  auto doubled = [](double i) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
    g(0, 2) = i;
    g(0, 3) = 2 * i;
    g(1, 2) = i;
    g(1, 3) = i;
    return g;
  };
  SubalgebraReport one = bounded_subalgebra(s3, doubled, idx);
  CHECK(one.dimension == 1);
  REQUIRE(one.bounded_basis.size() == 1);

  CHECK_THROWS(bounded_subalgebra(s1, ident, {10, 100, 1000}));
  CHECK_THROWS(bounded_subalgebra(s1, ident, {10, 100, 90, 1000}));
  CHECK_THROWS(bounded_subalgebra(s1, ident, {10, 20, 40, 80}));
  auto drift = [](double) { return 2.0 * Eigen::MatrixXd::Identity(3, 3); };
  CHECK_THROWS(bounded_subalgebra(s1, drift, idx));
}

TEST_CASE("orbit sampling is deterministic in the seed") {
  TorusSpec spec = ex1_spec();
  LieBox box;
  box.split = {{-0.5, 0.5}};
  box.aniso = {{{-0.3, 0.3}}};
  Eigen::MatrixXd g = ex1_translator(10);
  OrbitSample a = sample_orbit(spec, g, box, 5, 99);
  OrbitSample b = sample_orbit(spec, g, box, 5, 99);
  OrbitSample c = sample_orbit(spec, g, box, 5, 100);
  REQUIRE(a.lattices.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK((a.lattices[k].basis - b.lattices[k].basis).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(a.lattices[k].abs_det - 1.0) < 1e-8);
  }
  bool same = true;
  for (int k = 0; k < 5; ++k)
    if ((a.lattices[k].basis - c.lattices[k].basis).cwiseAbs().maxCoeff() != 0.0)
      same = false;
  CHECK_FALSE(same);
}

TEST_CASE("systole survey and siegel statistic near the identity coset") {
  TorusSpec spec = ex1_spec();
  LieBox box;
  box.split = {{-0.2, 0.2}};
  box.aniso = {{{-0.2, 0.2}}};
  OrbitSample s = sample_orbit(spec, Eigen::MatrixXd::Identity(3, 3), box, 400, 31);

  SurveyResult tiny = systole_survey(s, 1e-3);
  CHECK(tiny.fraction == 0.0);
  CHECK(tiny.below == 0);
  CHECK(tiny.n == 400);

  SurveyResult all = systole_survey(s, 2.0);
  CHECK(all.fraction == 1.0);

  SiegelResult sg = siegel_statistic(s, 2.0);
  CHECK(sg.ball_volume == doctest::Approx(32.0 * M_PI / 3.0).epsilon(1e-12));
  // near the identity the count is ~30, not the Haar value ~33.5: the six
  // norm-2 vectors sit on the ball boundary and half drift out
  CHECK(std::abs(sg.mean - sg.ball_volume) / sg.ball_volume < 0.15);
  CHECK(sg.std_error > 0);
}

TEST_CASE("ball volumes") {
  CHECK(ball_volume(2, 1.0) == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(ball_volume(3, 2.0) == doctest::Approx(33.510321638).epsilon(1e-9));
  CHECK(ball_volume(1, 3.0) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("region sampling respects the polytope") {
  TorusSpec spec = ex1_spec();
  Eigen::MatrixXd g = ex1_translator(100.0);
  HPolytope region = build_omega(spec, g, 0.1);
  OrbitSample s = sample_orbit_region(spec, g, region, {{{-1.0, 1.0}}}, 50, 12);
  REQUIRE(s.params.size() == 50);
  for (const auto& t : s.params) {
    Eigen::VectorXd tb(2);
    tb << t.split[0], t.split[1];
    Eigen::VectorXd u = spec.to_chart(tb);
    CHECK(((region.A * u - region.b).array() >= -1e-9).all());
  }
}

TEST_CASE("worked translate families at reduced depth") {
  ExampleReport r1 = example_suite("ex1", 1e5);
  CHECK(r1.ok);
  CHECK(r1.bounded_dim == 0);
  REQUIRE(r1.growth_exponents.size() == 3);
  for (double e : r1.growth_exponents) CHECK(e == doctest::Approx(1.0).epsilon(0.1));

  ExampleReport r2 = example_suite("ex2", 1e5);
  CHECK(r2.ok);
  CHECK(r2.bounded_dim == 0);

  ExampleReport r3 = example_suite("ex3", 1e5);
  CHECK(r3.ok);
  CHECK(r3.exact_commutation);
  CHECK(r3.bounded_dim == 1);
  CHECK(r3.centralizer_dim == 7);
  CHECK(r3.center_ok);

  CHECK_THROWS(example_suite("ex4"));
}
