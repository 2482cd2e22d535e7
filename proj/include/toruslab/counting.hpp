#pragma once

#include <cstdint>
#include <vector>

#include "toruslab/polynomial.hpp"

namespace tlab {

// Census of integer matrices with a prescribed characteristic polynomial
// inside Frobenius-norm balls. Base field is Q; a general base degree m0
// enters only through the fit exponents.
struct CountSpec {
  int N = 0;
  RatPolynomial p;
  std::vector<double> radii;  // strictly increasing, positive
  int l0 = 0;                 // rational roots of p
  int a0 = 0;                 // irreducible non-linear factors
  int m0 = 1;
  double alpha() const { return m0 * N * (N - 1) / 2.0; }
  int beta() const { return l0 + a0 - 1; }
};

CountSpec make_count_spec(const RatPolynomial& p, const std::vector<double>& radii,
                          int m0 = 1);

struct CountReport {
  CountSpec spec;
  std::vector<long long> counts;             // per radius, cumulative in R
  std::vector<double> normalized;            // count / (R^alpha (log R)^beta)
  std::vector<double> doubling_log_ratio;    // log2(count(R)/count(R/2)); NaN if
                                             // R/2 is not in the radius list
};

// Single-radius enumerators (exact).
long long enumerate_n2(const RatPolynomial& p, double R);
long long enumerate_n3(const RatPolynomial& p, double R,
                       long long ops_cap = 2'000'000'000LL);

// One sweep at the largest radius, bucketed per radius.
std::vector<long long> enumerate_n2_series(const RatPolynomial& p,
                                           const std::vector<double>& radii);
std::vector<long long> enumerate_n3_series(const RatPolynomial& p,
                                           const std::vector<double>& radii,
                                           long long ops_cap = 2'000'000'000LL);

// Independent oracles: plain nested loops over all entries, prefix-pruned by
// the norm only. Buckets are cumulative like the series enumerators.
std::vector<long long> naive_n2_series(const RatPolynomial& p,
                                       const std::vector<double>& radii);
std::vector<long long> naive_n3_series(const RatPolynomial& p,
                                       const std::vector<double>& radii);

CountReport count_series(const CountSpec& spec);

struct FitReport {
  double alpha = 0.0;                        // expected doubling exponent
  int beta = 0;                              // expected log exponent
  std::vector<double> doubling_log_ratios;   // defined entries only, in R order
  double plateau = 0.0;                      // max/min of the last window of
                                             // normalized values
  int plateau_window = 0;
};
FitReport fit_asymptotics(const CountReport& report, int plateau_window = 4);

// Comparative diagnostic for one extra log factor: the ratio of raw counts of
// a (beta+1) family to a beta family should grow like log(4R)/log(R) per
// quadrupling.
struct ComparativeRow {
  double R = 0, R4 = 0;
  double observed = 0;  // q(4R)/q(R) with q = count_hi/count_lo
  double expected = 0;  // log(4R)/log(R)
};
std::vector<ComparativeRow> beta_comparative(const CountReport& higher,
                                             const CountReport& lower);

}  // namespace tlab
