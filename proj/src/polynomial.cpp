#include "toruslab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace tlab {

RatPolynomial::RatPolynomial(std::vector<BigRational> ascending)
    : coeffs_(std::move(ascending)) {
  trim();
}

RatPolynomial RatPolynomial::constant(const BigRational& c) {
  return RatPolynomial({c});
}

RatPolynomial RatPolynomial::x() {
  return RatPolynomial({BigRational(0), BigRational(1)});
}

void RatPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool RatPolynomial::is_monic() const {
  return !coeffs_.empty() && coeffs_.back() == 1;
}

const BigRational& RatPolynomial::coeff(int k) const {
  static const BigRational zero(0);
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
  return coeffs_[k];
}

BigRational RatPolynomial::leading() const {
  if (coeffs_.empty()) return BigRational(0);
  return coeffs_.back();
}

RatPolynomial RatPolynomial::operator+(const RatPolynomial& o) const {
  std::vector<BigRational> c(std::max(coeffs_.size(), o.coeffs_.size()),
                             BigRational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return RatPolynomial(std::move(c));
}

RatPolynomial RatPolynomial::operator-(const RatPolynomial& o) const {
  return *this + (-o);
}

RatPolynomial RatPolynomial::operator-() const {
  std::vector<BigRational> c = coeffs_;
  for (auto& q : c) q = -q;
  return RatPolynomial(std::move(c));
}

RatPolynomial RatPolynomial::operator*(const RatPolynomial& o) const {
  if (is_zero() || o.is_zero()) return RatPolynomial();
  std::vector<BigRational> c(coeffs_.size() + o.coeffs_.size() - 1,
                             BigRational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * o.coeffs_[j];
  return RatPolynomial(std::move(c));
}

RatPolynomial RatPolynomial::operator*(const BigRational& k) const {
  std::vector<BigRational> c = coeffs_;
  for (auto& q : c) q *= k;
  return RatPolynomial(std::move(c));
}

RatPolynomial::DivResult RatPolynomial::divmod(const RatPolynomial& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  RatPolynomial rem = *this;
  std::vector<BigRational> quot;
  int dd = d.degree();
  if (rem.degree() >= dd) quot.assign(rem.degree() - dd + 1, BigRational(0));
  while (!rem.is_zero() && rem.degree() >= dd) {
    BigRational f = rem.leading() / d.leading();
    int shift = rem.degree() - dd;
    quot[shift] = f;
    std::vector<BigRational> sub(shift + d.coeffs_.size(), BigRational(0));
    for (size_t i = 0; i < d.coeffs_.size(); ++i) sub[shift + i] = d.coeffs_[i] * f;
    rem = rem - RatPolynomial(std::move(sub));
  }
  return {RatPolynomial(std::move(quot)), rem};
}

RatPolynomial RatPolynomial::derivative() const {
  if (degree() < 1) return RatPolynomial();
  std::vector<BigRational> c(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * BigRational(i);
  return RatPolynomial(std::move(c));
}

RatPolynomial RatPolynomial::monic() const {
  if (is_zero()) return *this;
  RatPolynomial r = *this;
  BigRational lead = r.leading();
  for (auto& q : r.coeffs_) q /= lead;
  return r;
}

BigRational RatPolynomial::eval(const BigRational& a) const {
  BigRational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + *it;
  return acc;
}

CF RatPolynomial::eval(const CF& z) const {
  CF acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * z + CF(float50_from_rat(*it));
  return acc;
}

double RatPolynomial::eval(double a) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * a + rat_to_double(*it);
  return acc;
}

RatPolynomial RatPolynomial::gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    RatPolynomial r = a.divmod(b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

bool RatPolynomial::squarefree() const {
  if (degree() < 2) return !is_zero();
  return gcd(*this, derivative()).degree() == 0;
}

namespace {

std::vector<BigInt> small_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> divs;
  if (n == 0) return divs;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Clear denominators: returns primitive-ish integer coefficient vector.
std::vector<BigInt> integer_coeffs(const std::vector<BigRational>& c) {
  BigInt lcm = 1;
  for (const auto& q : c) {
    BigInt d = denominator(q);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<BigInt> out(c.size());
  for (size_t i = 0; i < c.size(); ++i)
    out[i] = numerator(c[i]) * (lcm / denominator(c[i]));
  return out;
}

}  // namespace

std::vector<BigRational> RatPolynomial::rational_roots() const {
  std::vector<BigRational> roots;
  if (degree() < 1) return roots;
  RatPolynomial p = *this;
  // strip zero roots
  size_t low = 0;
  while (low < p.coeffs_.size() && p.coeffs_[low] == 0) ++low;
  if (low > 0) {
    roots.push_back(BigRational(0));
    std::vector<BigRational> c(p.coeffs_.begin() + low, p.coeffs_.end());
    p = RatPolynomial(std::move(c));
  }
  if (p.degree() >= 1) {
    std::vector<BigInt> ic = integer_coeffs(p.coeffs_);
    std::vector<BigInt> ps = small_divisors(ic.front());
    std::vector<BigInt> qs = small_divisors(ic.back());
    for (const auto& pn : ps) {
      for (const auto& qd : qs) {
        for (int sign : {1, -1}) {
          BigRational cand(sign * pn, qd);
          if (p.eval(cand) == 0) {
            if (std::find(roots.begin(), roots.end(), cand) == roots.end())
              roots.push_back(cand);
          }
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Dense poly arithmetic mod a small prime, used by the mod-p certificate.
using ModPoly = std::vector<int64_t>;

ModPoly mp_trim(ModPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, int64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  // reduce mod f (monic)
  int df = static_cast<int>(f.size()) - 1;
  for (int k = static_cast<int>(c.size()) - 1; k >= df; --k) {
    int64_t t = c[k] % p;
    if (t == 0) continue;
    for (int i = 0; i < df; ++i)
      c[k - df + i] = ((c[k - df + i] - t * f[i]) % p + p * p) % p;
    c[k] = 0;
  }
  c.resize(df);
  return mp_trim(c);
}

ModPoly mp_gcd(ModPoly a, ModPoly b, int64_t p) {
  auto inv = [&](int64_t x) {
    int64_t r = 1, e = p - 2, base = ((x % p) + p) % p;
    while (e) { if (e & 1) r = r * base % p; base = base * base % p; e >>= 1; }
    return r;
  };
  a = mp_trim(std::move(a));
  b = mp_trim(std::move(b));
  while (!b.empty()) {
    // a mod b
    int64_t lbinv = inv(b.back());
    ModPoly r = a;
    int db = static_cast<int>(b.size()) - 1;
    for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
      int64_t t = r[k] % p * lbinv % p;
      if (t == 0) continue;
      for (int i = 0; i <= db; ++i)
        r[k - db + i] = ((r[k - db + i] - t * b[i]) % p + p * p) % p;
    }
    r = mp_trim(std::move(r));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f via repeated Frobenius of x^p.
bool mp_irreducible(const ModPoly& f, int64_t p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d <= 0) return false;
  ModPoly xp = {0, 1};  // will hold x^(p^k) mod f
  for (int k = 1; k <= d / 2; ++k) {
    // raise to p-th power: repeated squaring on the exponent p
    ModPoly acc = {1};
    ModPoly base = xp;
    int64_t e = p;
    while (e) {
      if (e & 1) acc = mp_mulmod(acc, base, f, p);
      base = mp_mulmod(base, base, f, p);
      e >>= 1;
    }
    xp = acc;
    // gcd(f, x^(p^k) - x)
    ModPoly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    diff = mp_trim(std::move(diff));
    ModPoly g = mp_gcd(f, diff, p);
    if (static_cast<int>(g.size()) - 1 > 0) return false;  // proper factor
  }
  return true;
}

}  // namespace

RatPolynomial::Irreducibility RatPolynomial::irreducibility() const {
  Irreducibility out;
  int d = degree();
  if (d <= 0) { out.irreducible = false; out.certified = true; out.method = "degree"; return out; }
  if (d == 1) { out.irreducible = true; out.certified = true; out.method = "degree"; return out; }
  bool has_root = !rational_roots().empty();
  if (d <= 3) {
    out.irreducible = !has_root;
    out.certified = true;
    out.method = "rational-root-exclusion";
    return out;
  }
  if (has_root) { out.irreducible = false; out.certified = true; out.method = "rational-root-exclusion"; return out; }
  std::vector<BigInt> ic = integer_coeffs(coeffs_);
  static const int64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int64_t p : primes) {
    if (ic.back() % p == 0) continue;  // degree drops mod p
    ModPoly f(ic.size());
    int64_t lead = (ic.back() % p).convert_to<int64_t>();
    // make monic mod p
    int64_t inv = 1, e = p - 2, base = ((lead % p) + p) % p;
    while (e) { if (e & 1) inv = inv * base % p; base = base * base % p; e >>= 1; }
    for (size_t i = 0; i < ic.size(); ++i) {
      int64_t c = ((ic[i] % p).convert_to<int64_t>() + p) % p;
      f[i] = c * inv % p;
    }
    if (mp_irreducible(f, p)) {
      out.irreducible = true;
      out.certified = true;
      out.method = "mod-p";
      return out;
    }
  }
  out.irreducible = true;   // no rational root, no certificate found
  out.certified = false;
  out.method = "heuristic";
  return out;
}

std::string RatPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const BigRational& c = coeff(k);
    if (c == 0) continue;
    bool neg = c < 0;
    BigRational a = neg ? BigRational(-c) : c;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    bool unit = (a == 1);
    if (k == 0 || !unit) s += rat_to_string(a);
    if (k > 0) {
      s += "x";
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
  bool peek(char c) { skip(); return i < s.size() && s[i] == c; }
  bool eat(char c) { if (peek(c)) { ++i; return true; } return false; }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial parse error at position " +
                                std::to_string(i) + ": " + what);
  }

  RatPolynomial parse_sum() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true; else eat('+');
    RatPolynomial acc = parse_product();
    if (neg) acc = -acc;
    while (true) {
      skip();
      if (eat('+')) acc = acc + parse_product();
      else if (eat('-')) acc = acc - parse_product();
      else break;
    }
    return acc;
  }

  RatPolynomial parse_product() {
    RatPolynomial acc = parse_factor();
    while (true) {
      skip();
      if (i >= s.size()) break;
      char c = s[i];
      if (c == '(' || c == 'x' || std::isdigit(static_cast<unsigned char>(c)))
        acc = acc * parse_factor();
      else if (c == '*') { ++i; acc = acc * parse_factor(); }
      else break;
    }
    return acc;
  }

  RatPolynomial parse_factor() {
    skip();
    if (i >= s.size()) fail("unexpected end");
    RatPolynomial base;
    if (eat('(')) {
      base = parse_sum();
      if (!eat(')')) fail("expected ')'");
    } else if (s[i] == 'x') {
      ++i;
      base = RatPolynomial::x();
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      base = RatPolynomial::constant(parse_number());
    } else {
      fail(std::string("unexpected character '") + s[i] + "'");
    }
    skip();
    if (eat('^')) {
      long e = parse_int().convert_to<long>();
      if (e < 0) fail("negative exponent");
      RatPolynomial r = RatPolynomial::constant(BigRational(1));
      for (long k = 0; k < e; ++k) r = r * base;
      base = r;
    }
    return base;
  }

  BigRational parse_number() {
    BigInt num = parse_int();
    if (peek('/')) {
      ++i;
      BigInt den = parse_int();
      if (den == 0) fail("zero denominator");
      return BigRational(num, den);
    }
    return BigRational(num);
  }

  BigInt parse_int() {
    skip();
    bool neg = eat('-');
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected integer");
    BigInt v(s.substr(start, i - start));
    return neg ? BigInt(-v) : v;
  }
};

}  // namespace

RatPolynomial RatPolynomial::parse(const std::string& text) {
  Parser p(text);
  RatPolynomial out = p.parse_sum();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return out;
}

}  // namespace tlab
