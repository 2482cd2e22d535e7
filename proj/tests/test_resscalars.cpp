#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "toruslab/resscalars.hpp"
#include "toruslab/wedge.hpp"

using namespace tlab;

static BigRational Q(long long n, long long d = 1) { return BigRational(n, d); }

static FieldPtr sqrt2_field() {
  static FieldPtr f = NumberField::create(RatPolynomial::parse("x^2-2"));
  return f;
}

static FieldElement fe(const FieldPtr& f, long long a, long long b) {
  return FieldElement(f, {Q(a), Q(b)});
}

TEST_CASE("subset bookkeeping") {
  auto s42 = subsets_of_grade(4, 2);
  REQUIRE(s42.size() == 6);
  CHECK(s42.front() == std::vector<int>{0, 1});
  CHECK(s42.back() == std::vector<int>{2, 3});
  for (size_t i = 0; i < s42.size(); ++i)
    CHECK(subset_rank(s42[i], 4) == static_cast<int>(i));
  CHECK(binomial(9, 3) == 84);
  CHECK(binomial(9, 6) == 84);
  CHECK(binomial(5, 0) == 1);
}

TEST_CASE("wedge coordinates are subset minors") {
  // columns e1, e2 in dim 3: only the {1,2} coordinate survives
  MatQ cols = {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(0), Q(0)}};
  VecQ w = wedge_coords(cols, 3);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Q(1));
  CHECK(w[1] == Q(0));
  CHECK(w[2] == Q(0));

  MatQ cols2 = {{Q(1), Q(4)}, {Q(2), Q(5)}, {Q(3), Q(6)}};
  VecQ w2 = wedge_coords(cols2, 3);
  CHECK(w2[0] == Q(-3));  // rows {0,1}
  CHECK(w2[1] == Q(-6));  // rows {0,2}
  CHECK(w2[2] == Q(-3));  // rows {1,2}

  Eigen::MatrixXd dc(3, 2);
  dc << 1, 4, 2, 5, 3, 6;
  Eigen::VectorXd dw = wedge_coords(dc);
  CHECK(dw[0] == doctest::Approx(-3.0));
  CHECK(dw[1] == doctest::Approx(-6.0));
  CHECK(dw[2] == doctest::Approx(-3.0));
}

TEST_CASE("compound action: identity, determinant, shear") {
  MatQ g = {{Q(1), Q(1)}, {Q(0), Q(1)}};
  VecQ v = {Q(2), Q(5)};  // grade 1 = plain matrix action
  VecQ gv = compound_apply(g, 1, v);
  CHECK(gv == VecQ{Q(7), Q(5)});

  // top grade multiplies by det = 1
  VecQ top = {Q(3)};
  CHECK(compound_apply(g, 2, top) == VecQ{Q(3)});

  MatQ m = {{Q(2), Q(0)}, {Q(0), Q(3)}};
  CHECK(compound_apply(m, 2, VecQ{Q(1)}) == VecQ{Q(6)});

  // compound of a product = product of compounds (grade 2 in dim 3)
  MatQ a = {{Q(1), Q(2), Q(0)}, {Q(0), Q(1), Q(3)}, {Q(1), Q(0), Q(1)}};
  MatQ b = {{Q(0), Q(1), Q(1)}, {Q(2), Q(0), Q(1)}, {Q(1), Q(1), Q(0)}};
  VecQ w = {Q(1), Q(-2), Q(4)};
  CHECK(compound_apply(matq_mul(a, b), 2, w) ==
        compound_apply(a, 2, compound_apply(b, 2, w)));

  CHECK(minor_det(a, {0, 1}, {1, 2}) == Q(2) * Q(3) - Q(0) * Q(1));
}

TEST_CASE("geometric embedding of Q(sqrt2)^2") {
  GeometricEmbedding emb = geom_embedding(sqrt2_field(), 2);
  CHECK(emb.m0 == 2);
  CHECK(emb.D == 4);
  CHECK(emb.r1 == 2);
  CHECK(emb.s1 == 0);
  // c_w = sqrt(|disc(x^2-2)|) = sqrt(8)
  CHECK(emb.c_w == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));

  // covolume of the whole defining basis = c_w^N
  std::vector<std::vector<Float50>> cols(emb.D, std::vector<Float50>(emb.D));
  for (int c = 0; c < emb.D; ++c)
    for (int r = 0; r < emb.D; ++r) cols[c][r] = emb.basis_real[r][c];
  CHECK(covolume(cols).convert_to<double>() == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("k-major coordinate layout") {
  GeometricEmbedding emb = geom_embedding(sqrt2_field(), 2);
  FieldVec v = {fe(emb.field, 3, 5), fe(emb.field, -1, 2)};
  VecQ c = geom_embed(emb, v);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == Q(3));   // w_0 slot of e_1
  CHECK(c[1] == Q(-1));  // w_0 slot of e_2
  CHECK(c[2] == Q(5));   // w_1 slot of e_1
  CHECK(c[3] == Q(2));   // w_1 slot of e_2
}

TEST_CASE("norm map at e_1: covolume equals c_w exactly in the margin sense") {
  GeometricEmbedding emb = geom_embedding(sqrt2_field(), 2);
  FieldVec e1 = {fe(emb.field, 1, 0), fe(emb.field, 0, 0)};
  NormImage img = norm_map(emb, {e1});
  CHECK(img.grade == 2);
  REQUIRE(img.vectors.size() == 2);
  // spans {e_1, theta e_1}: defining coords e_0 and e_2
  CHECK(img.vectors[0][0] == Q(1));
  CHECK(img.vectors[1][2] == Q(1));

  MarginReport rep = covolume_decrease_margin(emb, e1);
  CHECK(rep.within);
  CHECK(rep.norm_image == doctest::Approx(std::sqrt(8.0)).epsilon(1e-10));
  CHECK(rep.vec_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // equality case of the collapse bound
  CHECK(rep.ratio == doctest::Approx(rep.bound).epsilon(1e-12));
  CHECK(rep.bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("margin holds on random vectors over three fields") {
  for (const char* poly : {"x^2-2", "x^2-3", "x^3-2"}) {
    auto F = NumberField::create(RatPolynomial::parse(poly));
    GeometricEmbedding emb = geom_embedding(F, 2);
    RngStream rng(11, 0);
    for (int k = 0; k < 100; ++k) {
      FieldVec v = random_vector(emb, rng);
      MarginReport rep = covolume_decrease_margin(emb, v);
      CHECK(rep.within);
      CHECK(rep.ratio <= rep.bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("field matrix helpers") {
  auto F = sqrt2_field();
  FieldMat g = {{fe(F, 1, 0), fe(F, 0, 1)}, {fe(F, 0, 0), fe(F, 1, 0)}};
  CHECK(field_mat_det(F, g).coords == VecQ{Q(1), Q(0)});

  FieldVec v = {fe(F, 2, 0), fe(F, 1, 1)};
  FieldVec gv = field_mat_apply(g, v);
  // first entry: 2 + theta * (1 + theta) = 4 + theta
  CHECK(gv[0].coords == VecQ{Q(4), Q(1)});
  CHECK(gv[1].coords == VecQ{Q(1), Q(1)});

  FieldMat swap = {{fe(F, 0, 0), fe(F, 1, 0)}, {fe(F, 1, 0), fe(F, 0, 0)}};
  CHECK(field_mat_det(F, swap).coords == VecQ{Q(-1), Q(0)});
}

TEST_CASE("equivariance on an explicit shear") {
  GeometricEmbedding emb = geom_embedding(sqrt2_field(), 2);
  FieldMat g = {{fe(emb.field, 1, 0), fe(emb.field, 0, 1)},
                {fe(emb.field, 0, 0), fe(emb.field, 1, 0)}};
  FieldVec v = {fe(emb.field, 1, 0), fe(emb.field, 0, 0)};
  auto rep1 = equivariance_check(emb, g, {v});
  CHECK(rep1.ok);
  FieldVec v2 = {fe(emb.field, 2, 1), fe(emb.field, -1, 3)};
  auto rep2 = equivariance_check(emb, g, {v, v2});
  CHECK(rep2.ok);

  // determinant 2 rejected up front
  FieldMat bad = {{fe(emb.field, 2, 0), fe(emb.field, 0, 0)},
                  {fe(emb.field, 0, 0), fe(emb.field, 1, 0)}};
  auto rep3 = equivariance_check(emb, bad, {v});
  CHECK_FALSE(rep3.ok);
  CHECK(rep3.message == "determinant is not 1");
}

TEST_CASE("equivariance on random cases, three fields, N = 2 and 3") {
  int caseno = 0;
  for (const char* poly : {"x^2-2", "x^2-3", "x^3-2"}) {
    auto F = NumberField::create(RatPolynomial::parse(poly));
    for (int N : {2, 3}) {
      GeometricEmbedding emb = geom_embedding(F, N);
      RngStream rng(5, ++caseno);
      for (int k = 0; k < 10; ++k) {
        FieldMat g = random_sl(emb, rng);
        int a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(N - 1)));
        std::vector<FieldVec> vs;
        for (int i = 0; i < a; ++i) vs.push_back(random_vector(emb, rng, 3));
        auto rep = equivariance_check(emb, g, vs);
        CHECK_MESSAGE(rep.ok, poly, " N=", N, " case ", k, ": ", rep.message);
      }
    }
  }
}

TEST_CASE("cubic field constant") {
  auto F = NumberField::create(RatPolynomial::parse("x^3-2"));
  GeometricEmbedding emb = geom_embedding(F, 2);
  // |disc(x^3-2)| = 108
  CHECK(emb.c_w == doctest::Approx(std::sqrt(108.0)).epsilon(1e-10));
  CHECK(emb.r1 == 1);
  CHECK(emb.s1 == 1);
  CHECK(emb.D == 6);
}
