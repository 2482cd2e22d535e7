#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "toruslab/lattice.hpp"
#include "toruslab/rng.hpp"

using namespace tlab;

static LatticeBasis zn(int n) {
  return make_lattice(Eigen::MatrixXd::Identity(n, n));
}

// exhaustive shortest vector over a provably sufficient coefficient box,
// exact integer arithmetic throughout
static long long brute_min_norm2(const std::vector<std::vector<long long>>& cols_ll,
                                 const Eigen::MatrixXd& B) {
  int rank = static_cast<int>(cols_ll[0].size());
  int dim = static_cast<int>(cols_ll.size());
  double m = 1e300;
  for (int j = 0; j < rank; ++j) m = std::min(m, B.col(j).norm());
  Eigen::MatrixXd inv = B.inverse();
  std::vector<long long> bound(rank);
  double nodes = 1;
  for (int j = 0; j < rank; ++j) {
    bound[j] = static_cast<long long>(std::ceil(inv.row(j).norm() * m * (1 + 1e-9)));
    nodes *= 2 * bound[j] + 1;
  }
  REQUIRE(nodes < 2e6);
  long long best = -1;
  std::vector<long long> c(rank, 0);
  std::vector<long long> partial(dim, 0);
  std::function<void(int)> rec = [&](int j) {
    if (j == rank) {
      bool zero = true;
      long long s = 0;
      for (int r = 0; r < dim; ++r) {
        if (partial[r] != 0) zero = false;
        s += partial[r] * partial[r];
      }
      if (!zero && (best < 0 || s < best)) best = s;
      return;
    }
    for (long long v = -bound[j]; v <= bound[j]; ++v) {
      for (int r = 0; r < dim; ++r) partial[r] += v * cols_ll[r][j];
      rec(j + 1);
      for (int r = 0; r < dim; ++r) partial[r] -= v * cols_ll[r][j];
    }
  };
  rec(0);
  return best;
}

TEST_CASE("point counts in standard lattices") {
  CHECK(count_points(zn(2), 1.0) == 4);
  CHECK(count_points(zn(2), 2.0) == 12);
  CHECK(count_points(zn(3), 1.0) == 6);
  CHECK(count_points(zn(3), 1.5) == 18);
  CHECK(count_points(zn(2), 0.999) == 0);
  CHECK(systole(zn(3)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hexagonal lattice") {
  Eigen::MatrixXd B(2, 2);
  B << 1, 0.5, 0, std::sqrt(3.0) / 2;
  LatticeBasis L = make_lattice(B);
  CHECK(systole(L) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(count_points(L, 1.0) == 6);
  CHECK(L.abs_det == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
}

TEST_CASE("lll reduces a sheared basis") {
  Eigen::MatrixXd B(2, 2);
  B << 1, 1e6, 0, 1;
  LatticeBasis L = make_lattice(B);
  LllResult red = lll_reduce(L);
  double shortest = std::min(red.reduced.basis.col(0).norm(),
                             red.reduced.basis.col(1).norm());
  CHECK(shortest == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(red.reduced.abs_det == doctest::Approx(1.0).epsilon(1e-9));

  // reduced = input * U with integer unimodular U
  const auto& U = red.unimodular;
  REQUIRE(U.size() == 2);
  long long det = U[0][0] * U[1][1] - U[0][1] * U[1][0];
  CHECK((det == 1 || det == -1));
  Eigen::MatrixXd Ud(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) Ud(i, j) = static_cast<double>(U[i][j]);
  CHECK((B * Ud - red.reduced.basis).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("count_points sees through a skewed basis") {
  Eigen::MatrixXd B(2, 2);
  B << 1, 1e6, 0, 1;
  CHECK(count_points(make_lattice(B), 2.0) == 12);

  // unimodular change of basis never changes counts
  Eigen::MatrixXd M(2, 2);
  M << 3, 1, 2, 1;  // det 1
  Eigen::MatrixXd U(2, 2);
  U << 1, 4, 0, 1;
  CHECK(count_points(make_lattice(M), 5.0) == count_points(make_lattice(M * U), 5.0));
}

TEST_CASE("shortest vector basics") {
  ShortestVector sv = shortest_vector(zn(2));
  CHECK(sv.norm == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(sv.coeffs.size() == 2);
  // sign-canonical: first nonzero coefficient positive
  for (auto c : sv.coeffs)
    if (c != 0) {
      CHECK(c > 0);
      break;
    }
  // the vector matches its coefficients
  Eigen::VectorXd rebuilt = Eigen::VectorXd::Zero(2);
  for (int j = 0; j < 2; ++j) rebuilt += static_cast<double>(sv.coeffs[j]) * zn(2).basis.col(j);
  CHECK((rebuilt - sv.v).cwiseAbs().maxCoeff() < 1e-12);

  ShortestVector again = shortest_vector(zn(2));
  CHECK(again.coeffs == sv.coeffs);

  Eigen::MatrixXd one(1, 1);
  one << -5;
  ShortestVector r1 = shortest_vector(make_lattice(one));
  CHECK(r1.norm == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r1.coeffs == std::vector<std::int64_t>{1});
}

TEST_CASE("shortest vector against exhaustive search") {
  RngStream rng(2024, 0);
  int done = 0;
  for (int rank = 2; rank <= 4; ++rank) {
    int trials = 0;
    while (trials < 10) {
      int dim = rank;
      Eigen::MatrixXd B(dim, rank);
      std::vector<std::vector<long long>> cols(dim, std::vector<long long>(rank));
      for (int r = 0; r < dim; ++r)
        for (int j = 0; j < rank; ++j) {
          long long v = rng.uniform_int(-5, 5);
          cols[r][j] = v;
          B(r, j) = static_cast<double>(v);
        }
      if (std::abs(B.determinant()) < 0.5) continue;
      Eigen::MatrixXd inv = B.inverse();
      double m = 1e300;
      for (int j = 0; j < rank; ++j) m = std::min(m, B.col(j).norm());
      double nodes = 1;
      for (int j = 0; j < rank; ++j)
        nodes *= 2 * std::ceil(inv.row(j).norm() * m * (1 + 1e-9)) + 1;
      if (nodes > 2e6) continue;
      ++trials;

      long long want = brute_min_norm2(cols, B);
      ShortestVector sv = shortest_vector(make_lattice(B));
      long long got = 0;
      for (int r = 0; r < dim; ++r) {
        long long x = 0;
        for (int j = 0; j < rank; ++j) x += cols[r][j] * sv.coeffs[j];
        got += x * x;
      }
      CHECK_MESSAGE(got == want, "rank=", rank, " trial=", trials);
      CHECK(sv.norm == doctest::Approx(std::sqrt(static_cast<double>(want))).epsilon(1e-9));
      ++done;
    }
  }
  CHECK(done == 30);
}

TEST_CASE("exact basis round trip") {
  MatQ cols = {{BigRational(2), BigRational(1)}, {BigRational(0), BigRational(1)}};
  LatticeBasis L = make_lattice_exact(cols);
  CHECK(L.has_exact);
  CHECK(L.basis(0, 0) == 2.0);
  CHECK(L.basis(1, 1) == 1.0);
  CHECK(L.abs_det == doctest::Approx(2.0).epsilon(1e-12));
  // lattice {(x,y): x = y mod 2}: nothing inside the unit ball, the four
  // (+-1,+-1) at radius sqrt 2
  CHECK(count_points(L, 1.0) == 0);
  CHECK(count_points(L, std::sqrt(2.0)) == 4);

  CHECK_FALSE(zn(3).has_exact);
  CHECK_THROWS(make_lattice(Eigen::MatrixXd::Zero(2, 2)));
}
