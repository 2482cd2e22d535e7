#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// "num/den" in lowest terms, "num" when den == 1.
inline std::string rat_to_string(const BigRational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline BigRational rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

// Exact: every finite double is a dyadic rational.
inline BigRational rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  if (x == 0.0) return BigRational(0);
  int exp2 = 0;
  double m = std::frexp(x, &exp2);  // x = m * 2^exp2, 0.5 <= |m| < 1
  // 53 bits of mantissa
  int64_t mi = static_cast<int64_t>(std::ldexp(m, 53));
  exp2 -= 53;
  BigRational r(mi);
  if (exp2 >= 0) {
    r *= BigRational(BigInt(1) << exp2);
  } else {
    r /= BigRational(BigInt(1) << (-exp2));
  }
  return r;
}

inline double rat_to_double(const BigRational& q) {
  return q.convert_to<double>();
}

// Nearest rational with denominator <= maxDen (continued fractions); used to
// snap numerically recovered directions back to exact data.
inline BigRational rat_snap(double x, const BigInt& maxDen = BigInt(1000000)) {
  BigRational exact = rat_from_double(x);
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigRational y = exact;
  for (int it = 0; it < 128; ++it) {
    BigInt a = numerator(y) / denominator(y);  // floor toward zero for positive
    if (y < 0 && BigRational(a) != y) a -= 1;  // true floor
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > maxDen) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    BigRational frac = y - BigRational(a);
    if (frac == 0) break;
    y = BigRational(1) / frac;
  }
  if (q1 == 0) return exact;
  return BigRational(p1, q1);
}

}  // namespace tlab
