#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "toruslab/counting.hpp"

using namespace tlab;

static RatPolynomial P(const char* s) { return RatPolynomial::parse(s); }

TEST_CASE("frozen census values") {
  // 2x2: trace/determinant fibers
  CHECK(enumerate_n2(P("x^2-2"), 2.0) == 4);  // the four [[±1,±1],[±1,∓1]]
  CHECK(enumerate_n2(P("x^2-2"), 5.0) == 16);
  CHECK(enumerate_n2(P("x^2-2"), 8.0) == 16);
  CHECK(enumerate_n2(P("x^2+1"), 1.0) == 0);
  CHECK(enumerate_n2(P("x^2+1"), 2.0) == 2);
  CHECK(enumerate_n2(P("x^2-3x+2"), 5.0) == 42);

  // 3x3
  CHECK(enumerate_n3(P("(x-1)(x-2)(x-3)"), 3.75) == 12);
  CHECK(enumerate_n3(P("x^3-2"), 3.0) == 288);
  CHECK(enumerate_n3(P("x^3-2"), 4.0) == 936);
}

TEST_CASE("negation bijection: A <-> -A swaps p(x) for +-p(-x)") {
  CHECK(enumerate_n2(P("x^2+3x+2"), 5.0) == enumerate_n2(P("x^2-3x+2"), 5.0));
  CHECK(enumerate_n2(P("x^2+3x+2"), 5.0) == 42);
  CHECK(enumerate_n3(P("x^3+2"), 3.0) == 288);
  CHECK(enumerate_n3(P("x^3+2"), 4.0) == enumerate_n3(P("x^3-2"), 4.0));
}

TEST_CASE("fibered enumerator agrees with the nested-loop oracle (2x2)") {
  std::vector<double> radii = {2.0, 5.0, 11.5, 20.0};
  for (const char* s : {"x^2-2", "x^2-3x+2", "x^2+x-3", "x^2-5", "x^2+1"}) {
    auto fast = enumerate_n2_series(P(s), radii);
    auto slow = naive_n2_series(P(s), radii);
    CHECK(fast == slow);
  }
}

TEST_CASE("fibered enumerator agrees with the nested-loop oracle (3x3)") {
  {
    auto fast = enumerate_n3_series(P("x^3-2"), {3.0, 4.0});
    auto slow = naive_n3_series(P("x^3-2"), {3.0, 4.0});
    CHECK(fast == slow);
    CHECK(fast == std::vector<long long>{288, 936});
  }
  {
    auto fast = enumerate_n3_series(P("(x-1)(x-2)(x-3)"), {3.75, 6.0});
    auto slow = naive_n3_series(P("(x-1)(x-2)(x-3)"), {3.75, 6.0});
    CHECK(fast == slow);
    CHECK(fast[0] == 12);
  }
}

TEST_CASE("series buckets are cumulative and match single calls") {
  auto series = enumerate_n2_series(P("x^2-2"), {2.0, 5.0, 8.0});
  CHECK(series == std::vector<long long>{4, 16, 16});
  for (size_t i = 1; i < series.size(); ++i) CHECK(series[i] >= series[i - 1]);
}

TEST_CASE("count spec exponents") {
  CountSpec q = make_count_spec(P("x^2-2"), {2, 4});
  CHECK(q.N == 2);
  CHECK(q.l0 == 0);
  CHECK(q.a0 == 1);
  CHECK(q.beta() == 0);
  CHECK(q.alpha() == doctest::Approx(1.0));

  CHECK(make_count_spec(P("x^2-2"), {2, 4}, 2).alpha() == doctest::Approx(2.0));

  CountSpec split = make_count_spec(P("x^2-3x+2"), {2, 4});
  CHECK(split.l0 == 2);
  CHECK(split.a0 == 0);
  CHECK(split.beta() == 1);

  CountSpec cubic = make_count_spec(P("x^3-2"), {2, 4});
  CHECK(cubic.N == 3);
  CHECK(cubic.alpha() == doctest::Approx(3.0));
  CHECK(cubic.beta() == 0);

  CountSpec tri = make_count_spec(P("(x-1)(x-2)(x-3)"), {2, 4});
  CHECK(tri.l0 == 3);
  CHECK(tri.beta() == 2);

  CountSpec mixed = make_count_spec(P("(x-1)(x^2-2)"), {2, 4});
  CHECK(mixed.l0 == 1);
  CHECK(mixed.a0 == 1);
  CHECK(mixed.beta() == 1);

  CHECK_THROWS_AS(make_count_spec(P("2x^2-1"), {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2-1/2"), {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2"), {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^4-2"), {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x-1"), {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2-2"), {2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2-2"), {}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2-2"), {4, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2-2"), {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2-2"), {-1}), std::invalid_argument);
  CHECK_THROWS_AS(make_count_spec(P("x^2-2"), {2e6}), std::invalid_argument);
}

TEST_CASE("count series: normalization and doubling ratios") {
  CountSpec spec = make_count_spec(P("x^2-2"), {2, 4, 5, 8, 16, 32});
  CountReport rep = count_series(spec);
  REQUIRE(rep.counts.size() == 6);
  CHECK(rep.counts[0] == 4);
  CHECK(rep.counts[1] == enumerate_n2(P("x^2-2"), 4.0));
  CHECK(rep.counts[3] == 16);

  for (size_t i = 0; i < rep.counts.size(); ++i) {
    double R = spec.radii[i];
    CHECK(rep.normalized[i] == doctest::Approx(rep.counts[i] / R).epsilon(1e-12));
  }

  CHECK(std::isnan(rep.doubling_log_ratio[0]));  // no R/2 in the list
  CHECK(std::isnan(rep.doubling_log_ratio[2]));  // 2.5 absent
  CHECK(rep.doubling_log_ratio[1] ==
        doctest::Approx(std::log2(double(rep.counts[1]) / rep.counts[0])));
  CHECK(rep.doubling_log_ratio[3] ==
        doctest::Approx(std::log2(double(rep.counts[3]) / rep.counts[1])));
  CHECK(rep.doubling_log_ratio[5] ==
        doctest::Approx(std::log2(double(rep.counts[5]) / rep.counts[4])));
}

TEST_CASE("asymptotic fit plumbing") {
  CountSpec spec = make_count_spec(P("x^2-2"), {2, 4, 8, 16, 32});
  CountReport rep = count_series(spec);
  FitReport fit = fit_asymptotics(rep);
  CHECK(fit.alpha == doctest::Approx(1.0));
  CHECK(fit.beta == 0);
  CHECK(fit.doubling_log_ratios.size() == 4);
  CHECK(fit.plateau_window == 4);
  CHECK(fit.plateau >= 1.0);

  CountSpec narrow = make_count_spec(P("x^2-2"), {2, 4, 8, 16});
  CHECK_THROWS_AS(fit_asymptotics(count_series(narrow)), std::invalid_argument);
  CountSpec shallow = make_count_spec(P("x^2-2"), {2, 3, 4, 5, 6});
  CHECK_THROWS_AS(fit_asymptotics(count_series(shallow)), std::invalid_argument);

  // window reaching a zero count
  CountSpec gauss = make_count_spec(P("x^2+1"), {1, 2, 4, 8, 16});
  CHECK_THROWS_AS(fit_asymptotics(count_series(gauss), 5), std::invalid_argument);
  CHECK(fit_asymptotics(count_series(gauss), 4).plateau > 0);
}

TEST_CASE("comparative log-factor diagnostic") {
  CountSpec hi = make_count_spec(P("x^2-3x+2"), {5, 10, 20, 80});
  CountSpec lo = make_count_spec(P("x^2-2"), {5, 10, 20, 80});
  auto rows = beta_comparative(count_series(hi), count_series(lo));
  REQUIRE(rows.size() == 2);  // 5->20 and 20->80 quadruplings
  CHECK(rows[0].R == 5);
  CHECK(rows[0].R4 == 20);
  CHECK(rows[0].expected == doctest::Approx(std::log(20.0) / std::log(5.0)));
  CHECK(rows[1].expected == doctest::Approx(std::log(80.0) / std::log(20.0)));
  for (const auto& r : rows) {
    CHECK(r.observed > 0);
    CHECK(std::isfinite(r.observed));
  }

  CountSpec other = make_count_spec(P("x^2-2"), {5, 20});
  CHECK_THROWS_AS(beta_comparative(count_series(hi), count_series(other)),
                  std::invalid_argument);
}

TEST_CASE("enumeration guard rails") {
  CHECK_THROWS_AS(enumerate_n2(P("x^2-2"), 2e6), std::invalid_argument);
  CHECK_THROWS_AS(naive_n2_series(P("x^2-2"), {201.0}), std::invalid_argument);
  CHECK_THROWS_AS(naive_n3_series(P("x^3-2"), {7.0}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_n3_series(P("x^3-2"), {65.0}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_n3(P("x^3-2"), 4.0, 100), std::runtime_error);
  CHECK_THROWS_AS(enumerate_n2(P("x^2-4x+4"), 5.0), std::invalid_argument);  // (x-2)^2
}
