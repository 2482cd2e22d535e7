#include "toruslab/numberfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlab {

namespace {

// Durand-Kerner iteration on a monic polynomial with exact rational
// coefficients, run in 50-digit arithmetic.
std::vector<CF> all_roots(const RatPolynomial& q) {
  int n = q.degree();
  RatPolynomial m = q.monic();
  Float50 bound(1);
  for (int k = 0; k < n; ++k) {
    using boost::multiprecision::abs;
    Float50 c = abs(float50_from_rat(m.coeff(k)));
    if (c + 1 > bound) bound = c + 1;
  }
  std::vector<CF> z(n);
  // standard non-real, non-root-of-unity seed ring
  CF seed(Float50("0.4"), Float50("0.9"));
  CF cur(Float50(1));
  for (int k = 0; k < n; ++k) {
    cur = cur * seed;
    z[k] = cur * CF(bound);
  }
  for (int iter = 0; iter < 500; ++iter) {
    Float50 worst(0);
    for (int k = 0; k < n; ++k) {
      CF num = m.eval(z[k]);
      CF den(Float50(1));
      for (int j = 0; j < n; ++j)
        if (j != k) den = den * (z[k] - z[j]);
      CF delta = num / den;
      z[k] -= delta;
      Float50 d = abs2(delta);
      if (d > worst) worst = d;
    }
    if (worst < Float50("1e-80")) break;
  }
  return z;
}

}  // namespace

std::shared_ptr<const NumberField> NumberField::create(const RatPolynomial& q,
                                                       int precision) {
  if (q.degree() < 1) throw std::invalid_argument("field polynomial must be non-constant");
  if (!q.is_monic()) throw std::invalid_argument("field polynomial must be monic");
  for (const auto& c : q.coeffs())
    if (denominator(c) != 1)
      throw std::invalid_argument("field polynomial must have integer coefficients");
  if (precision < 15 || precision > 45)
    throw std::invalid_argument("precision must be between 15 and 45 digits");
  auto irr = q.irreducibility();
  if (!irr.irreducible)
    throw std::invalid_argument("field polynomial is reducible over Q: " + q.to_string());

  auto field = std::shared_ptr<NumberField>(new NumberField());
  field->q_ = q;
  field->precision_ = precision;
  field->unverified_ = !irr.certified;

  std::vector<CF> raw = all_roots(q);
  // classify real vs complex; exact-coefficient polynomials have exactly
  // conjugate-symmetric root sets, so a tiny imaginary part means real.
  Float50 realTol = Float50("1e-40");
  std::vector<CF> reals, pos;
  for (auto& z : raw) {
    using boost::multiprecision::abs;
    if (abs(z.im) < realTol * (Float50(1) + abs(z.re))) {
      z.im = 0;
      reals.push_back(z);
    } else if (z.im > 0) {
      pos.push_back(z);
    }
  }
  if (static_cast<int>(reals.size() + 2 * pos.size()) != q.degree())
    throw std::runtime_error("root classification failed for " + q.to_string());
  std::sort(reals.begin(), reals.end(),
            [](const CF& a, const CF& b) { return a.re < b.re; });
  std::sort(pos.begin(), pos.end(), [](const CF& a, const CF& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  field->r_ = static_cast<int>(reals.size());
  field->s_ = static_cast<int>(pos.size());
  field->roots_ = reals;
  for (const auto& z : pos) {
    field->roots_.push_back(z);
    field->roots_.push_back(conj(z));
  }
  double residual = field->max_residual();
  double allowed = std::pow(10.0, 2 - precision);
  if (!(residual <= allowed))
    throw std::runtime_error("root refinement residual " + std::to_string(residual) +
                             " exceeds tolerance for " + q.to_string());
  return field;
}

double NumberField::max_residual() const {
  Float50 worst(0);
  for (const auto& z : roots_) {
    Float50 r = abs(q_.eval(z));
    if (r > worst) worst = r;
  }
  return to_double(worst);
}

FieldElement::FieldElement(FieldPtr f, VecQ c) : field(std::move(f)), coords(std::move(c)) {
  if (!field) throw std::invalid_argument("null field");
  if (static_cast<int>(coords.size()) != field->degree())
    throw std::invalid_argument("coordinate length must equal field degree");
}

FieldElement FieldElement::from_rational(const FieldPtr& f, const BigRational& c) {
  VecQ v(f->degree(), BigRational(0));
  v[0] = c;
  return FieldElement(f, std::move(v));
}

FieldElement FieldElement::theta(const FieldPtr& f) {
  if (f->degree() < 2) return from_rational(f, BigRational(0));
  VecQ v(f->degree(), BigRational(0));
  v[1] = 1;
  return FieldElement(f, std::move(v));
}

bool FieldElement::is_zero() const {
  for (const auto& c : coords)
    if (c != 0) return false;
  return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (field != o.field) throw std::invalid_argument("field mismatch");
  VecQ v = coords;
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.coords[i];
  return FieldElement(field, std::move(v));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  if (field != o.field) throw std::invalid_argument("field mismatch");
  VecQ v = coords;
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.coords[i];
  return FieldElement(field, std::move(v));
}

FieldElement FieldElement::operator*(const BigRational& c) const {
  VecQ v = coords;
  for (auto& q : v) q *= c;
  return FieldElement(field, std::move(v));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (field != o.field) throw std::invalid_argument("field mismatch");
  RatPolynomial a{std::vector<BigRational>(coords)};
  RatPolynomial b{std::vector<BigRational>(o.coords)};
  RatPolynomial rem = (a * b).divmod(field->poly()).rem;
  VecQ v(field->degree(), BigRational(0));
  for (int k = 0; k <= rem.degree(); ++k) v[k] = rem.coeff(k);
  return FieldElement(field, std::move(v));
}

MatQ FieldElement::regular_rep() const {
  int m = field->degree();
  MatQ rep = matq_zero(m, m);
  FieldElement basis = FieldElement::from_rational(field, BigRational(1));
  for (int j = 0; j < m; ++j) {
    FieldElement col = *this * basis;  // this * theta^j
    for (int i = 0; i < m; ++i) rep[i][j] = col.coords[i];
    basis = basis * FieldElement::theta(field);
  }
  return rep;
}

BigRational FieldElement::norm() const { return matq_det(regular_rep()); }

BigRational FieldElement::trace() const {
  MatQ rep = regular_rep();
  BigRational t(0);
  for (size_t i = 0; i < rep.size(); ++i) t += rep[i][i];
  return t;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero field element");
  // Solve regular_rep(this) * x = e_1.
  MatQ rep = regular_rep();
  MatQ inv = matq_inverse(rep);
  VecQ e1(field->degree(), BigRational(0));
  e1[0] = 1;
  return FieldElement(field, matq_apply(inv, e1));
}

std::vector<CF> FieldElement::embeddings() const {
  std::vector<CF> out;
  out.reserve(field->degree());
  for (const auto& root : field->roots()) {
    CF acc;
    for (int k = field->degree() - 1; k >= 0; --k)
      acc = acc * root + CF(float50_from_rat(coords[k]));
    out.push_back(acc);
  }
  return out;
}

FactorReport verify_factorization(const RatPolynomial& p,
                                  const std::vector<RatPolynomial>& factors) {
  FactorReport rep;
  RatPolynomial prod = RatPolynomial::constant(BigRational(1));
  for (const auto& f : factors) prod = prod * f;
  rep.product = prod;
  rep.product_matches = (prod == p);
  rep.squarefree = p.squarefree();
  rep.ok = rep.product_matches && rep.squarefree;
  if (!rep.product_matches) rep.message = "factor product does not equal p";
  else if (!rep.squarefree) rep.message = "p is not squarefree";
  for (const auto& f : factors) {
    if (f.degree() < 1) {
      rep.ok = false;
      rep.message = "constant factor supplied";
      continue;
    }
    std::vector<BigRational> roots = f.rational_roots();
    if (static_cast<int>(roots.size()) == f.degree()) {
      rep.l0 += f.degree();
      for (auto& r : roots) rep.split_roots.push_back(r);
      continue;
    }
    auto irr = f.irreducibility();
    if (!irr.irreducible || (!roots.empty())) {
      rep.ok = false;
      rep.message = "factor " + f.to_string() +
                    " is neither fully split nor irreducible; split it further";
      continue;
    }
    rep.field_polys.push_back(f);
    rep.unverified.push_back(!irr.certified);
  }
  std::sort(rep.split_roots.begin(), rep.split_roots.end());
  if (rep.ok && rep.message.empty()) rep.message = "ok";
  return rep;
}

}  // namespace tlab
