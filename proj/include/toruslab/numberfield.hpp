#pragma once

#include <memory>
#include <vector>

#include "toruslab/floats.hpp"
#include "toruslab/matq.hpp"
#include "toruslab/polynomial.hpp"

namespace tlab {

// Number field Q[x]/(q), q monic irreducible with integer coefficients.
// Basis is always the power basis 1, theta, ..., theta^(m-1). Numeric roots
// are carried at `precision` decimal digits (default 30), ordered real roots
// ascending first, then one representative per conjugate pair (positive
// imaginary part, sorted by real part) each followed by its conjugate.
class NumberField {
 public:
  static std::shared_ptr<const NumberField> create(const RatPolynomial& q,
                                                   int precision = 30);

  const RatPolynomial& poly() const { return q_; }
  int degree() const { return q_.degree(); }
  int num_real() const { return r_; }
  int num_complex_pairs() const { return s_; }
  int precision() const { return precision_; }
  bool unverified_irreducible() const { return unverified_; }
  const std::vector<CF>& roots() const { return roots_; }

  // Largest |q(root)| over the stored roots; bounded by 10^(2-precision).
  double max_residual() const;

 private:
  NumberField() = default;
  RatPolynomial q_;
  int r_ = 0, s_ = 0, precision_ = 30;
  bool unverified_ = false;
  std::vector<CF> roots_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of a number field in power-basis coordinates.
struct FieldElement {
  FieldPtr field;
  VecQ coords;  // length = degree

  FieldElement() = default;
  FieldElement(FieldPtr f, VecQ c);
  static FieldElement from_rational(const FieldPtr& f, const BigRational& c);
  static FieldElement theta(const FieldPtr& f);  // the generator

  bool is_zero() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;  // reduction mod q
  FieldElement operator*(const BigRational& c) const;
  FieldElement inverse() const;  // errors on zero

  // Matrix of multiplication by this element in the power basis:
  // R * coords(b) = coords(this * b).
  MatQ regular_rep() const;

  BigRational norm() const;   // det of regular_rep
  BigRational trace() const;  // trace of regular_rep

  // Images under all degree() embeddings, in the field's root order.
  std::vector<CF> embeddings() const;
};

// Report for a claimed factorization p = p_0 * p_1 * ... * p_{a_0} where the
// split part p_0 may be supplied pre-split or as a product of linear factors.
struct FactorReport {
  RatPolynomial product;            // recomputed product of the factors
  bool product_matches = false;
  bool squarefree = false;
  int l0 = 0;                       // number of rational roots (split rank share)
  std::vector<BigRational> split_roots;
  std::vector<RatPolynomial> field_polys;  // the non-split irreducible factors
  std::vector<bool> unverified;            // per field poly: heuristic-only flag
  bool ok = false;
  std::string message;
};

// Validates that `factors` multiply to p, that p is squarefree, and that each
// factor either splits completely over Q (joins the split part) or passes the
// irreducibility policy (joins the field list).
FactorReport verify_factorization(const RatPolynomial& p,
                                  const std::vector<RatPolynomial>& factors);

}  // namespace tlab
