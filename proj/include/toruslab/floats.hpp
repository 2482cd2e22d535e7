#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>

#include "toruslab/rational.hpp"

namespace tlab {

using Float50 = boost::multiprecision::cpp_bin_float_50;

inline double to_double(const Float50& x) { return x.convert_to<double>(); }

inline Float50 float50_from_rat(const BigRational& q) {
  return Float50(numerator(q)) / Float50(denominator(q));
}

// Minimal complex type over Float50. std::complex is only specified for the
// builtin floating types, so roll the few operations we need.
struct CF {
  Float50 re{0}, im{0};
  CF() = default;
  CF(Float50 r) : re(std::move(r)) {}
  CF(Float50 r, Float50 i) : re(std::move(r)), im(std::move(i)) {}

  CF operator+(const CF& o) const { return {re + o.re, im + o.im}; }
  CF operator-(const CF& o) const { return {re - o.re, im - o.im}; }
  CF operator*(const CF& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CF operator/(const CF& o) const {
    Float50 d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  CF& operator+=(const CF& o) { re += o.re; im += o.im; return *this; }
  CF& operator-=(const CF& o) { re -= o.re; im -= o.im; return *this; }
  bool operator==(const CF& o) const { return re == o.re && im == o.im; }
};

inline CF conj(const CF& z) { return {z.re, -z.im}; }
inline Float50 abs2(const CF& z) { return z.re * z.re + z.im * z.im; }
inline Float50 abs(const CF& z) {
  using boost::multiprecision::sqrt;
  return sqrt(abs2(z));
}
inline std::complex<double> to_cd(const CF& z) {
  return {to_double(z.re), to_double(z.im)};
}

}  // namespace tlab
