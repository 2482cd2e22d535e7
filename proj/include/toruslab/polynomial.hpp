#pragma once

#include <string>
#include <vector>

#include "toruslab/floats.hpp"
#include "toruslab/rational.hpp"

namespace tlab {

// Univariate polynomial over Q. Coefficients ascending, no trailing zeros;
// the zero polynomial has an empty coefficient vector and degree -1.
class RatPolynomial {
 public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<BigRational> ascending);
  static RatPolynomial constant(const BigRational& c);
  static RatPolynomial x();  // the monomial x

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const;
  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  const BigRational& coeff(int k) const;
  BigRational leading() const;

  bool operator==(const RatPolynomial& o) const { return coeffs_ == o.coeffs_; }

  RatPolynomial operator+(const RatPolynomial& o) const;
  RatPolynomial operator-(const RatPolynomial& o) const;
  RatPolynomial operator*(const RatPolynomial& o) const;
  RatPolynomial operator*(const BigRational& c) const;
  RatPolynomial operator-() const;

  // Division with remainder; divisor must be nonzero.
  struct DivResult;
  DivResult divmod(const RatPolynomial& divisor) const;

  RatPolynomial derivative() const;
  RatPolynomial monic() const;  // divide by leading coefficient

  BigRational eval(const BigRational& a) const;
  CF eval(const CF& z) const;
  double eval(double a) const;

  // Monic gcd via Euclid.
  static RatPolynomial gcd(RatPolynomial a, RatPolynomial b);
  bool squarefree() const;

  // All rational roots, each with multiplicity 1 expected for squarefree
  // input; returned sorted ascending.
  std::vector<BigRational> rational_roots() const;

  // Irreducibility policy. Degree <= 1: irreducible (degree 1) or not.
  // Degrees 2-3: irreducible over Q iff no rational root. Degree >= 4:
  // tries to certify by irreducibility modulo small primes; when no prime
  // certifies but no rational root exists either, returns likely=true with
  // certified=false ("unverified-irreducible").
  struct Irreducibility {
    bool irreducible = false;   // best verdict
    bool certified = false;     // proof-level (root exclusion or mod-p)
    std::string method;         // "degree", "rational-root-exclusion", "mod-p", "heuristic"
  };
  Irreducibility irreducibility() const;

  std::string to_string() const;  // human form, descending powers

  // Accepts sums/products of parenthesized polynomials in x with rational
  // coefficients: "(x-1)(x-2)", "x^2-2", "2x^3 - 1/2x + 4".
  static RatPolynomial parse(const std::string& text);

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

struct RatPolynomial::DivResult {
  RatPolynomial quot, rem;
};

}  // namespace tlab
