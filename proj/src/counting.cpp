#include "toruslab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace tlab {

namespace {

long long int_coeff(const RatPolynomial& p, int k) {
  const BigRational& c = p.coeff(k);
  BigInt num = boost::multiprecision::numerator(c);
  BigInt den = boost::multiprecision::denominator(c);
  if (den != 1) throw std::invalid_argument("polynomial must have integer coefficients");
  if (num > std::numeric_limits<long long>::max() ||
      num < std::numeric_limits<long long>::min())
    throw std::invalid_argument("polynomial coefficient out of range");
  return num.convert_to<long long>();
}

void check_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw std::invalid_argument("need at least one radius");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw std::invalid_argument("radii must increase strictly");
  }
  if (radii.back() > 1e6) throw std::invalid_argument("radius too large for exact enumeration");
}

// cumulative buckets: thresholds[i] = R_i^2 (+ slack for integer boundaries)
struct Buckets {
  std::vector<double> thr;
  std::vector<long long> hits;  // per radius index, non-cumulative
  explicit Buckets(const std::vector<double>& radii) {
    for (double r : radii) thr.push_back(r * r + 1e-9);
    hits.assign(radii.size(), 0);
  }
  inline void add(long long norm2, long long times = 1) {
    double s = static_cast<double>(norm2);
    size_t i = std::lower_bound(thr.begin(), thr.end(), s) - thr.begin();
    if (i < hits.size()) hits[i] += times;
  }
  std::vector<long long> cumulative() const {
    std::vector<long long> out(hits.size(), 0);
    long long acc = 0;
    for (size_t i = 0; i < hits.size(); ++i) {
      acc += hits[i];
      out[i] = acc;
    }
    return out;
  }
};

inline long long isqrt_floor(double v) {
  if (v < 0) return -1;
  long long r = static_cast<long long>(std::sqrt(v));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

void quadratic_data(const RatPolynomial& p, long long& T, long long& D) {
  if (p.degree() != 2 || !p.is_monic())
    throw std::invalid_argument("need a monic quadratic");
  T = -int_coeff(p, 1);
  D = int_coeff(p, 0);
  if (T * T - 4 * D == 0) throw std::invalid_argument("polynomial is not squarefree");
}

void cubic_data(const RatPolynomial& p, long long& T, long long& E2, long long& Det) {
  if (p.degree() != 3 || !p.is_monic())
    throw std::invalid_argument("need a monic cubic");
  if (!p.squarefree()) throw std::invalid_argument("polynomial is not squarefree");
  T = -int_coeff(p, 2);
  E2 = int_coeff(p, 1);
  Det = -int_coeff(p, 0);
}

std::vector<long long> n2_series(long long T, long long D, const std::vector<double>& radii) {
  Buckets bk(radii);
  double R2 = bk.thr.back();
  long long amax = isqrt_floor(R2);
  for (long long a = -amax; a <= amax; ++a) {
    long long d = T - a;
    long long diag = a * a + d * d;
    if (static_cast<double>(diag) > R2) continue;
    long long M = a * d - D;
    long long rest = isqrt_floor(R2 - static_cast<double>(diag));
    if (M == 0) {
      // b = 0 leaves c free within the norm budget
      bk.add(diag);  // c = 0
      for (long long c = 1; c <= rest; ++c) {
        bk.add(diag + c * c, 2);  // +/- c
      }
    }
    for (long long b = 1; b <= rest; ++b) {
      if (M % b != 0) continue;
      long long c = M / b;
      if (c > rest || c < -rest) continue;
      long long s = diag + b * b + c * c;
      // (b, c) and (-b, -c) share the norm and the product
      if (static_cast<double>(s) <= R2) bk.add(s, 2);
    }
  }
  return bk.cumulative();
}

// 3x3: diagonal forced by the trace, e32 solved from the second coefficient,
// determinant checked; e23 = 0 falls back to the linear determinant relation.
std::vector<long long> n3_series(long long T, long long E2, long long Det,
                                 const std::vector<double>& radii, long long ops_cap) {
  Buckets bk(radii);
  double R2 = bk.thr.back();
  long long r = isqrt_floor(R2);
  long long ops = 0;
  auto charge = [&](long long n = 1) {
    ops += n;
    if (ops > ops_cap) throw std::runtime_error("enumeration budget exceeded");
  };
  for (long long e11 = -r; e11 <= r; ++e11) {
    long long s1 = e11 * e11;
    for (long long e22 = -r; e22 <= r; ++e22) {
      long long s2 = s1 + e22 * e22;
      if (static_cast<double>(s2) > R2) continue;
      long long e33 = T - e11 - e22;
      long long s3 = s2 + e33 * e33;
      if (static_cast<double>(s3) > R2) continue;
      long long diag2 = e11 * e22 + e11 * e33 + e22 * e33;
      long long ddd = e11 * e22 * e33;
      long long lim12 = isqrt_floor(R2 - static_cast<double>(s3));
      for (long long e12 = -lim12; e12 <= lim12; ++e12) {
        long long s4 = s3 + e12 * e12;
        long long lim21 = isqrt_floor(R2 - static_cast<double>(s4));
        for (long long e21 = -lim21; e21 <= lim21; ++e21) {
          long long s5 = s4 + e21 * e21;
          long long lim13 = isqrt_floor(R2 - static_cast<double>(s5));
          for (long long e13 = -lim13; e13 <= lim13; ++e13) {
            long long s6 = s5 + e13 * e13;
            long long lim31 = isqrt_floor(R2 - static_cast<double>(s6));
            for (long long e31 = -lim31; e31 <= lim31; ++e31) {
              long long s7 = s6 + e31 * e31;
              // e23*e32 = K from the second coefficient
              long long K = diag2 - e12 * e21 - e13 * e31 - E2;
              long long base = ddd - e12 * e21 * e33 - e13 * e22 * e31;
              long long alpha = e12 * e31;  // coefficient of e23 in det
              long long beta = e13 * e21;   // coefficient of e32 in det
              long long lim23 = isqrt_floor(R2 - static_cast<double>(s7));
              charge(2 * lim23 + 1);
              for (long long e23 = -lim23; e23 <= lim23; ++e23) {
                if (e23 == 0) {
                  if (K != 0) continue;
                  // det = base + beta*e32 must equal Det
                  long long need = Det - base;
                  long long lim32 = isqrt_floor(R2 - static_cast<double>(s7));
                  if (beta == 0) {
                    if (need != 0) continue;
                    for (long long e32 = -lim32; e32 <= lim32; ++e32)
                      bk.add(s7 + e32 * e32);
                  } else {
                    if (need % beta != 0) continue;
                    long long e32 = need / beta;
                    long long s9 = s7 + e32 * e32;
                    if (static_cast<double>(s9) <= R2) bk.add(s9);
                  }
                } else {
                  if (K % e23 != 0) continue;
                  long long e32 = K / e23;
                  long long s9 = s7 + e23 * e23 + e32 * e32;
                  if (static_cast<double>(s9) > R2) continue;
                  long long det = base - e11 * K + alpha * e23 + beta * e32;
                  if (det == Det) bk.add(s9);
                }
              }
            }
          }
        }
      }
    }
  }
  return bk.cumulative();
}

}  // namespace

CountSpec make_count_spec(const RatPolynomial& p, const std::vector<double>& radii,
                          int m0) {
  if (p.degree() < 2 || p.degree() > 3)
    throw std::invalid_argument("enumeration supports degrees 2 and 3");
  if (!p.is_monic()) throw std::invalid_argument("polynomial must be monic");
  for (int k = 0; k <= p.degree(); ++k) int_coeff(p, k);  // integrality
  if (!p.squarefree()) throw std::invalid_argument("polynomial must be squarefree");
  check_radii(radii);
  if (m0 < 1) throw std::invalid_argument("base degree must be at least 1");

  CountSpec spec;
  spec.N = p.degree();
  spec.p = p;
  spec.radii = radii;
  spec.m0 = m0;
  std::vector<BigRational> roots = p.rational_roots();
  spec.l0 = static_cast<int>(roots.size());
  // degree <= 3 leftover with no rational root is irreducible
  spec.a0 = (p.degree() - spec.l0 > 0) ? 1 : 0;
  if (p.degree() - spec.l0 == 1)
    throw std::logic_error("rational root extraction left a linear factor");
  return spec;
}

long long enumerate_n2(const RatPolynomial& p, double R) {
  return enumerate_n2_series(p, {R}).back();
}

long long enumerate_n3(const RatPolynomial& p, double R, long long ops_cap) {
  return enumerate_n3_series(p, {R}, ops_cap).back();
}

std::vector<long long> enumerate_n2_series(const RatPolynomial& p,
                                           const std::vector<double>& radii) {
  check_radii(radii);
  long long T, D;
  quadratic_data(p, T, D);
  return n2_series(T, D, radii);
}

std::vector<long long> enumerate_n3_series(const RatPolynomial& p,
                                           const std::vector<double>& radii,
                                           long long ops_cap) {
  check_radii(radii);
  if (radii.back() > 64)
    throw std::invalid_argument("radius cap for 3x3 enumeration is 64");
  long long T, E2, Det;
  cubic_data(p, T, E2, Det);
  return n3_series(T, E2, Det, radii, ops_cap);
}

std::vector<long long> naive_n2_series(const RatPolynomial& p,
                                       const std::vector<double>& radii) {
  check_radii(radii);
  if (radii.back() > 200) throw std::invalid_argument("naive oracle capped at radius 200");
  long long T, D;
  quadratic_data(p, T, D);
  Buckets bk(radii);
  double R2 = bk.thr.back();
  long long r = isqrt_floor(R2);
  for (long long a = -r; a <= r; ++a)
    for (long long b = -r; b <= r; ++b) {
      long long s2 = a * a + b * b;
      if (static_cast<double>(s2) > R2) continue;
      for (long long c = -r; c <= r; ++c) {
        long long s3 = s2 + c * c;
        if (static_cast<double>(s3) > R2) continue;
        for (long long d = -r; d <= r; ++d) {
          if (a + d != T || a * d - b * c != D) continue;
          long long s4 = s3 + d * d;
          if (static_cast<double>(s4) <= R2) bk.add(s4);
        }
      }
    }
  return bk.cumulative();
}

std::vector<long long> naive_n3_series(const RatPolynomial& p,
                                       const std::vector<double>& radii) {
  check_radii(radii);
  if (radii.back() > 6.5) throw std::invalid_argument("naive 3x3 oracle capped at radius 6.5");
  long long T, E2, Det;
  cubic_data(p, T, E2, Det);
  Buckets bk(radii);
  double R2 = bk.thr.back();
  long long r = isqrt_floor(R2);
  long long e[9];
  // entries in row-major order; prefix-pruned plain loops
  std::function<void(int, long long)> rec = [&](int k, long long s) {
    if (k == 9) {
      if (e[0] + e[4] + e[8] != T) return;
      long long m2 = e[0] * e[4] - e[1] * e[3] + e[0] * e[8] - e[2] * e[6] +
                     e[4] * e[8] - e[5] * e[7];
      if (m2 != E2) return;
      long long det = e[0] * (e[4] * e[8] - e[5] * e[7]) -
                      e[1] * (e[3] * e[8] - e[5] * e[6]) +
                      e[2] * (e[3] * e[7] - e[4] * e[6]);
      if (det != Det) return;
      bk.add(s);
      return;
    }
    for (long long v = -r; v <= r; ++v) {
      long long s2 = s + v * v;
      if (static_cast<double>(s2) > R2) continue;
      e[k] = v;
      rec(k + 1, s2);
    }
  };
  rec(0, 0);
  return bk.cumulative();
}

CountReport count_series(const CountSpec& spec) {
  CountReport rep;
  rep.spec = spec;
  if (spec.N == 2)
    rep.counts = enumerate_n2_series(spec.p, spec.radii);
  else if (spec.N == 3)
    rep.counts = enumerate_n3_series(spec.p, spec.radii);
  else
    throw std::invalid_argument("enumeration supports N = 2 and 3 only");
  for (size_t i = 1; i < rep.counts.size(); ++i)
    if (rep.counts[i] < rep.counts[i - 1])
      throw std::logic_error("counts must be nondecreasing in R");

  double alpha = spec.alpha();
  int beta = spec.beta();
  double nan = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < spec.radii.size(); ++i) {
    double R = spec.radii[i];
    double denom = std::pow(R, alpha) * std::pow(std::log(R), beta);
    rep.normalized.push_back(rep.counts[i] / denom);
    double ratio = nan;
    for (size_t j = 0; j < i; ++j)
      if (std::abs(spec.radii[j] * 2 - R) <= 1e-9 * R && rep.counts[j] > 0)
        ratio = std::log2(static_cast<double>(rep.counts[i]) / rep.counts[j]);
    rep.doubling_log_ratio.push_back(ratio);
  }
  return rep;
}

FitReport fit_asymptotics(const CountReport& report, int plateau_window) {
  const auto& radii = report.spec.radii;
  if (radii.size() < 5 || radii.back() / radii.front() < 16 * (1 - 1e-9))
    throw std::invalid_argument("need at least 5 radii spanning 4 doublings");
  FitReport fit;
  fit.alpha = report.spec.alpha();
  fit.beta = report.spec.beta();
  for (double v : report.doubling_log_ratio)
    if (std::isfinite(v)) fit.doubling_log_ratios.push_back(v);
  int k = std::min<int>(plateau_window, static_cast<int>(report.normalized.size()));
  fit.plateau_window = k;
  double mx = -std::numeric_limits<double>::infinity(), mn = std::numeric_limits<double>::infinity();
  for (size_t i = report.normalized.size() - k; i < report.normalized.size(); ++i) {
    mx = std::max(mx, report.normalized[i]);
    mn = std::min(mn, report.normalized[i]);
  }
  if (!(mn > 0)) throw std::invalid_argument("plateau window contains empty counts");
  fit.plateau = mx / mn;
  return fit;
}

std::vector<ComparativeRow> beta_comparative(const CountReport& higher,
                                             const CountReport& lower) {
  if (higher.spec.radii != lower.spec.radii)
    throw std::invalid_argument("comparative diagnostic needs matching radii");
  const auto& radii = higher.spec.radii;
  std::vector<ComparativeRow> rows;
  for (size_t i = 0; i < radii.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      if (std::abs(radii[j] * 4 - radii[i]) > 1e-9 * radii[i]) continue;
      if (lower.counts[j] == 0 || lower.counts[i] == 0 || higher.counts[j] == 0) continue;
      double q1 = static_cast<double>(higher.counts[j]) / lower.counts[j];
      double q4 = static_cast<double>(higher.counts[i]) / lower.counts[i];
      ComparativeRow row;
      row.R = radii[j];
      row.R4 = radii[i];
      row.observed = q4 / q1;
      row.expected = std::log(radii[i]) / std::log(radii[j]);
      rows.push_back(row);
    }
  return rows;
}

}  // namespace tlab
