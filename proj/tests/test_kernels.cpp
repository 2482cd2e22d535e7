#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "toruslab/kernels.hpp"

using namespace tlab;

TEST_CASE("implementation selection") {
  std::string name = kernels::active();
  CHECK((name == "avx2" || name == "scalar"));
  kernels::force_scalar(true);
  CHECK(std::string(kernels::active()) == "scalar");
  kernels::force_scalar(false);
  CHECK(std::string(kernels::active()) == name);
}

TEST_CASE("count_inside equals the direct loop, scalar and vector alike") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  const std::size_t npts = 1013, dim = 3, nrows = 5;
  std::vector<std::vector<double>> soa(dim, std::vector<double>(npts));
  for (auto& col : soa)
    for (double& v : col) v = U(rng);
  std::vector<const double*> ptrs;
  for (auto& col : soa) ptrs.push_back(col.data());
  std::vector<double> A(nrows * dim), b(nrows);
  for (double& v : A) v = U(rng);
  for (double& v : b) v = U(rng) - 1.0;

  std::size_t direct = 0;
  for (std::size_t i = 0; i < npts; ++i) {
    bool in = true;
    for (std::size_t r = 0; r < nrows && in; ++r) {
      double acc = 0;
      for (std::size_t d = 0; d < dim; ++d) acc += A[r * dim + d] * soa[d][i];
      if (!(acc >= b[r])) in = false;
    }
    if (in) ++direct;
  }
  CHECK(direct > 0);
  CHECK(direct < npts);

  std::size_t active = kernels::count_inside(ptrs.data(), npts, A.data(), b.data(), nrows, dim);
  kernels::force_scalar(true);
  std::size_t scalar = kernels::count_inside(ptrs.data(), npts, A.data(), b.data(), nrows, dim);
  kernels::force_scalar(false);
  CHECK(active == direct);
  CHECK(scalar == direct);
}

TEST_CASE("line_scan frozen case") {
  double base[2] = {0.5, 0.0};
  double step[2] = {1.0, 0.0};
  kernels::LineScan r = kernels::line_scan(base, step, 2, -3, 4, 1.44);
  // points x = c + 0.5 for c in [-3,4): norms 2.5^2, 1.5^2, 0.5^2, 0.5^2, ...
  CHECK(r.count == 2);
  CHECK(r.min_norm2 == 0.25);
  CHECK(r.argmin == -1);
  CHECK(r.has_min);
}

TEST_CASE("line_scan: scalar and vector paths are bitwise equal") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t dim = 1 + rng() % 4;
    std::vector<double> base(dim), step(dim);
    for (double& v : base) v = U(rng);
    for (double& v : step) v = 0.05 * U(rng);
    std::int64_t c0 = -(std::int64_t)(rng() % 900);
    std::int64_t c1 = rng() % 900;
    double r2 = 0.5 + (rng() % 100) / 40.0;

    kernels::LineScan a = kernels::line_scan(base.data(), step.data(), dim, c0, c1, r2);
    kernels::force_scalar(true);
    kernels::LineScan s = kernels::line_scan(base.data(), step.data(), dim, c0, c1, r2);
    kernels::force_scalar(false);

    CHECK(a.count == s.count);
    CHECK(std::memcmp(&a.min_norm2, &s.min_norm2, sizeof(double)) == 0);
    CHECK(a.argmin == s.argmin);
    CHECK(a.has_min == s.has_min);
  }
}

TEST_CASE("line_scan empty range") {
  double base[1] = {1.0};
  double step[1] = {1.0};
  kernels::LineScan r = kernels::line_scan(base, step, 1, 5, 5, 100.0);
  CHECK(r.count == 0);
  CHECK_FALSE(r.has_min);
}
