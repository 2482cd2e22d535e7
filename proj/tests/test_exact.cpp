#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toruslab/matq.hpp"
#include "toruslab/numberfield.hpp"
#include "toruslab/polynomial.hpp"
#include "toruslab/rational.hpp"
#include "toruslab/simplex.hpp"

using namespace tlab;

static BigRational Q(long long n, long long d = 1) { return BigRational(n, d); }

TEST_CASE("rational string round trips") {
  CHECK(rat_to_string(Q(3, 6)) == "1/2");
  CHECK(rat_to_string(Q(-4)) == "-4");
  CHECK(rat_from_string("7/3") == Q(7, 3));
  CHECK(rat_from_string("-12") == Q(-12));
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
}

TEST_CASE("rat_from_double is exact on dyadics") {
  CHECK(rat_from_double(0.5) == Q(1, 2));
  CHECK(rat_from_double(-3.25) == Q(-13, 4));
  CHECK(rat_from_double(0.0) == Q(0));
  CHECK(rat_to_double(Q(1, 4)) == 0.25);
  CHECK_THROWS_AS(rat_from_double(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("rat_snap recovers small fractions") {
  CHECK(rat_snap(1.0 / 3.0) == Q(1, 3));
  CHECK(rat_snap(-2.0 / 7.0) == Q(-2, 7));
  CHECK(rat_snap(0.5) == Q(1, 2));
}

TEST_CASE("polynomial parse and arithmetic") {
  RatPolynomial p = RatPolynomial::parse("(x-1)(x-2)");
  CHECK(p == RatPolynomial({Q(2), Q(-3), Q(1)}));
  CHECK(p.degree() == 2);
  CHECK(p.is_monic());
  CHECK(p.eval(Q(1)) == Q(0));
  CHECK(p.eval(Q(3)) == Q(2));

  RatPolynomial q = RatPolynomial::parse("x^2-2");
  CHECK(q.coeff(0) == Q(-2));
  CHECK(q.coeff(1) == Q(0));
  CHECK(q.coeff(2) == Q(1));

  RatPolynomial r = RatPolynomial::parse("2x^3 - 1/2x + 4");
  CHECK(r.coeff(3) == Q(2));
  CHECK(r.coeff(1) == Q(-1, 2));
  CHECK(r.coeff(0) == Q(4));

  CHECK((p * q).degree() == 4);
  CHECK((p + (-p)).is_zero());

  auto dm = (p * q + RatPolynomial::constant(Q(5))).divmod(q);
  CHECK(dm.quot == p);
  CHECK(dm.rem == RatPolynomial::constant(Q(5)));
}

TEST_CASE("polynomial gcd, squarefree, roots") {
  RatPolynomial a = RatPolynomial::parse("x^2-1");
  RatPolynomial b = RatPolynomial::parse("(x-1)(x-2)");
  CHECK(RatPolynomial::gcd(a, b) == RatPolynomial::parse("x-1"));

  CHECK(RatPolynomial::parse("(x-1)(x-2)(x+3)").squarefree());
  CHECK_FALSE(RatPolynomial::parse("(x-1)(x-1)").squarefree());

  auto roots = RatPolynomial::parse("(x-1)(x-2)(x+3)").rational_roots();
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == Q(-3));
  CHECK(roots[1] == Q(1));
  CHECK(roots[2] == Q(2));

  CHECK(RatPolynomial::parse("x^2-2").rational_roots().empty());
  CHECK(RatPolynomial::parse("x^3-1").derivative() ==
        RatPolynomial({Q(0), Q(0), Q(3)}));
}

TEST_CASE("irreducibility policy tiers") {
  auto ir1 = RatPolynomial::parse("x^2-2").irreducibility();
  CHECK(ir1.irreducible);
  CHECK(ir1.certified);
  CHECK(ir1.method == "rational-root-exclusion");

  auto ir2 = RatPolynomial::parse("(x-1)(x-2)").irreducibility();
  CHECK_FALSE(ir2.irreducible);

  auto ir3 = RatPolynomial::parse("x^3-2").irreducibility();
  CHECK(ir3.irreducible);
  CHECK(ir3.certified);

  // irreducible mod 2
  auto ir4 = RatPolynomial::parse("x^4+x+1").irreducibility();
  CHECK(ir4.irreducible);
  CHECK(ir4.certified);
  CHECK(ir4.method == "mod-p");

  // irreducible over Q but reducible mod every prime: heuristic tier
  auto ir5 = RatPolynomial::parse("x^4+1").irreducibility();
  CHECK(ir5.irreducible);
  CHECK_FALSE(ir5.certified);
  CHECK(ir5.method == "heuristic");
}

TEST_CASE("number field creation and root order") {
  auto F = NumberField::create(RatPolynomial::parse("x^2-2"));
  CHECK(F->degree() == 2);
  CHECK(F->num_real() == 2);
  CHECK(F->num_complex_pairs() == 0);
  REQUIRE(F->roots().size() == 2);
  CHECK(to_double(F->roots()[0].re) == doctest::Approx(-1.41421356).epsilon(1e-8));
  CHECK(to_double(F->roots()[1].re) == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(F->max_residual() < 1e-25);

  auto C = NumberField::create(RatPolynomial::parse("x^3-2"));
  CHECK(C->num_real() == 1);
  CHECK(C->num_complex_pairs() == 1);
  REQUIRE(C->roots().size() == 3);
  CHECK(to_double(C->roots()[0].re) == doctest::Approx(1.25992105).epsilon(1e-8));
  CHECK(to_double(C->roots()[1].im) > 0);  // representative of the pair first
  CHECK(to_double(C->roots()[2].im) == doctest::Approx(-to_double(C->roots()[1].im)));
}

TEST_CASE("field element arithmetic in Q(sqrt 2)") {
  auto F = NumberField::create(RatPolynomial::parse("x^2-2"));
  FieldElement th = FieldElement::theta(F);
  FieldElement one = FieldElement::from_rational(F, Q(1));

  CHECK((th * th).coords == VecQ{Q(2), Q(0)});
  CHECK(((one + th) * (one - th)).coords == VecQ{Q(-1), Q(0)});

  FieldElement u(F, {Q(3), Q(2)});  // 3 + 2 theta, a unit
  CHECK(u.norm() == Q(1));
  CHECK(u.trace() == Q(6));
  CHECK(u.inverse().coords == VecQ{Q(3), Q(-2)});

  // columns are the coordinates of theta * basis element
  MatQ R = th.regular_rep();
  CHECK(R[0][0] == Q(0));
  CHECK(R[0][1] == Q(2));
  CHECK(R[1][0] == Q(1));
  CHECK(R[1][1] == Q(0));

  auto emb = th.embeddings();
  REQUIRE(emb.size() == 2);
  CHECK(to_double(emb[0].re) == doctest::Approx(-std::sqrt(2.0)));
  CHECK(to_double(emb[1].re) == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS(FieldElement::from_rational(F, Q(0)).inverse());
}

TEST_CASE("verify_factorization outcomes") {
  RatPolynomial p = RatPolynomial::parse("(x-1)(x^2-2)");
  auto ok = verify_factorization(p, {RatPolynomial::parse("x-1"),
                                     RatPolynomial::parse("x^2-2")});
  CHECK(ok.ok);
  CHECK(ok.product_matches);
  CHECK(ok.squarefree);
  CHECK(ok.l0 == 1);
  REQUIRE(ok.split_roots.size() == 1);
  CHECK(ok.split_roots[0] == Q(1));
  REQUIRE(ok.field_polys.size() == 1);
  CHECK(ok.field_polys[0] == RatPolynomial::parse("x^2-2"));

  auto sq = verify_factorization(RatPolynomial::parse("(x^2-2)(x^2-2)"),
                                 {RatPolynomial::parse("x^2-2"),
                                  RatPolynomial::parse("x^2-2")});
  CHECK_FALSE(sq.ok);
  CHECK_FALSE(sq.squarefree);

  auto mism = verify_factorization(p, {RatPolynomial::parse("x-1"),
                                       RatPolynomial::parse("x^2-3")});
  CHECK_FALSE(mism.ok);
  CHECK_FALSE(mism.product_matches);

  auto split = verify_factorization(RatPolynomial::parse("(x-1)(x-2)"),
                                    {RatPolynomial::parse("(x-1)(x-2)")});
  CHECK(split.ok);
  CHECK(split.l0 == 2);
  CHECK(split.field_polys.empty());
}

TEST_CASE("rational matrix kernels") {
  MatQ m = {{Q(1), Q(2)}, {Q(3), Q(4)}};
  CHECK(matq_det(m) == Q(-2));
  MatQ inv = matq_inverse(m);
  CHECK(matq_mul(m, inv) == matq_identity(2));

  MatQ sing = {{Q(1), Q(2)}, {Q(2), Q(4)}};
  CHECK(matq_det(sing) == Q(0));
  CHECK(matq_rank(sing) == 1);
  MatQ ns = matq_nullspace(sing);
  REQUIRE(ns.size() == 1);
  CHECK(matq_apply(sing, ns[0]) == VecQ{Q(0), Q(0)});
  CHECK_THROWS(matq_inverse(sing));

  MatQ a = {{Q(1), Q(0), Q(1)}, {Q(0), Q(1), Q(1)}};
  MatQ b = {{Q(1), Q(1), Q(2)}, {Q(1), Q(-1), Q(0)}};
  CHECK(matq_same_rowspan(a, b));
  MatQ c = {{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(1)}};
  CHECK_FALSE(matq_same_rowspan(a, c));
  CHECK(matq_same_rowspan(MatQ{}, MatQ{}));
}

TEST_CASE("simplex solves, detects infeasible and unbounded") {
  // max x + y st x <= 1, y <= 2 (as -x >= -1, -y >= -2)
  LpProblem p;
  p.Age = {{Q(-1), Q(0)}, {Q(0), Q(-1)}};
  p.bge = {Q(-1), Q(-2)};
  p.c = {Q(1), Q(1)};
  auto r = lp_solve(p);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == Q(3));
  CHECK(r.x == VecQ{Q(1), Q(2)});

  LpProblem inf;
  inf.Age = {{Q(1)}, {Q(-1)}};
  inf.bge = {Q(1), Q(0)};  // x >= 1 and x <= 0
  inf.c = {Q(0)};
  CHECK(lp_solve(inf).status == LpResult::Status::Infeasible);

  LpProblem unb;
  unb.Age = {{Q(1)}};
  unb.bge = {Q(0)};
  unb.c = {Q(1)};
  CHECK(lp_solve(unb).status == LpResult::Status::Unbounded);

  LpProblem eq;
  eq.Aeq = {{Q(1), Q(1)}};
  eq.beq = {Q(1)};
  eq.Age = {{Q(1), Q(0)}, {Q(0), Q(1)}};
  eq.bge = {Q(0), Q(0)};
  eq.c = {Q(1), Q(0)};
  auto re = lp_solve(eq);
  REQUIRE(re.status == LpResult::Status::Optimal);
  CHECK(re.value == Q(1));

  auto pt = lp_feasible_point(eq.Aeq, eq.beq, eq.Age, eq.bge, 2);
  REQUIRE(pt.has_value());
  CHECK((*pt)[0] + (*pt)[1] == Q(1));
  CHECK((*pt)[0] >= Q(0));
  CHECK((*pt)[1] >= Q(0));

  auto none = lp_feasible_point(inf.Aeq, inf.beq, inf.Age, inf.bge, 1);
  CHECK_FALSE(none.has_value());
}
