#include "toruslab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "toruslab/kernels.hpp"
#include "toruslab/wedge.hpp"

namespace tlab {

LatticeBasis make_lattice(const Eigen::MatrixXd& basis) {
  if (basis.rows() != basis.cols() || basis.rows() == 0)
    throw std::invalid_argument("make_lattice: need a square nonempty basis");
  LatticeBasis L;
  L.basis = basis;
  L.abs_det = std::abs(basis.determinant());
  if (L.abs_det < 1e-300) throw std::invalid_argument("make_lattice: singular basis");
  return L;
}

LatticeBasis make_lattice_exact(const MatQ& cols) {
  int n = static_cast<int>(cols.size());
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = rat_to_double(cols[i][j]);
  LatticeBasis L = make_lattice(b);
  L.has_exact = true;
  L.exact = cols;
  if (matq_det(cols) == 0) throw std::invalid_argument("make_lattice_exact: singular basis");
  return L;
}

LllResult lll_reduce(const LatticeBasis& L, double delta) {
  if (!(delta > 0.25 && delta < 1.0))
    throw std::invalid_argument("lll_reduce: delta out of (0.25, 1)");
  int n = L.rank();
  Eigen::MatrixXd b = L.basis;
  std::vector<std::vector<std::int64_t>> U(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) U[i][i] = 1;

  Eigen::MatrixXd bstar(b.rows(), n);
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd B(n);
  auto gram_schmidt = [&]() {
    for (int i = 0; i < n; ++i) {
      bstar.col(i) = b.col(i);
      for (int j = 0; j < i; ++j) {
        mu(i, j) = b.col(i).dot(bstar.col(j)) / B[j];
        bstar.col(i) -= mu(i, j) * bstar.col(j);
      }
      B[i] = bstar.col(i).squaredNorm();
      if (B[i] < 1e-280) throw std::runtime_error("lll_reduce: numerically singular basis");
    }
  };
  gram_schmidt();

  auto size_reduce = [&](int k, int j) {
    if (std::abs(mu(k, j)) <= 0.5) return;
    auto q = static_cast<std::int64_t>(std::llround(mu(k, j)));
    b.col(k) -= static_cast<double>(q) * b.col(j);
    for (int i = 0; i < n; ++i) U[i][k] -= q * U[i][j];
    gram_schmidt();
  };

  int k = 1;
  int guard = 0;
  while (k < n) {
    if (++guard > 100000) throw std::runtime_error("lll_reduce: did not terminate");
    size_reduce(k, k - 1);
    if (B[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * B[k - 1]) {
      for (int j = k - 2; j >= 0; --j) size_reduce(k, j);
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      for (int i = 0; i < n; ++i) std::swap(U[i][k], U[i][k - 1]);
      gram_schmidt();
      k = std::max(k - 1, 1);
    }
  }

  LllResult out;
  out.reduced.basis = b;
  out.reduced.abs_det = L.abs_det;
  out.unimodular = U;
  if (L.has_exact) {
    int m = n;
    out.reduced.has_exact = true;
    out.reduced.exact.assign(m, VecQ(m, BigRational(0)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        BigRational s(0);
        for (int t = 0; t < m; ++t) s += L.exact[i][t] * BigRational(U[t][j]);
        out.reduced.exact[i][j] = s;
      }
  }
  return out;
}

namespace {

// upper-triangular factor with positive diagonal: Gram = R^T R
Eigen::MatrixXd cholesky_upper(const Eigen::MatrixXd& basis) {
  Eigen::MatrixXd G = basis.transpose() * basis;
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("lattice enumeration: Gram not positive definite");
  return Eigen::MatrixXd(llt.matrixU());
}

bool lex_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::vector<std::int64_t> canonical_sign(std::vector<std::int64_t> c) {
  for (auto v : c) {
    if (v > 0) break;
    if (v < 0) {
      for (auto& x : c) x = -x;
      break;
    }
  }
  return c;
}

}  // namespace

ShortestVector shortest_vector(const LatticeBasis& L) {
  int n = L.rank();
  if (n > 12) throw std::invalid_argument("shortest_vector: rank > 12");
  LllResult red = lll_reduce(L);
  const Eigen::MatrixXd& b = red.reduced.basis;
  Eigen::MatrixXd R = cholesky_upper(b);

  double best = b.col(0).squaredNorm();
  for (int j = 1; j < n; ++j) best = std::min(best, b.col(j).squaredNorm());
  double bound = best * (1 + 1e-9);

  std::vector<std::int64_t> c(n, 0);
  std::vector<std::vector<std::int64_t>> hits;
  double best_seen = bound;

  // depth-first over coefficient levels n-1 .. 0
  std::function<void(int, double)> descend = [&](int level, double accum) {
    double rem = bound - accum;
    if (rem < 0) return;
    double center = 0;
    for (int j = level + 1; j < n; ++j) center += R(level, j) * c[j];
    double mid = -center / R(level, level);
    double w = std::sqrt(std::max(0.0, rem)) / R(level, level);
    auto lo = static_cast<std::int64_t>(std::ceil(mid - w - 1e-12));
    auto hi = static_cast<std::int64_t>(std::floor(mid + w + 1e-12));
    for (std::int64_t v = lo; v <= hi; ++v) {
      c[level] = v;
      double term = R(level, level) * (v - mid);
      double acc2 = accum + term * term;
      if (level == 0) {
        bool zero = true;
        for (auto x : c) zero = zero && x == 0;
        if (zero) continue;
        if (acc2 <= bound) {
          if (acc2 < best_seen * (1 - 1e-12)) hits.clear();
          if (acc2 <= best_seen * (1 + 1e-9)) {
            hits.push_back(c);
            best_seen = std::min(best_seen, acc2);
          }
        }
      } else if (acc2 <= bound) {
        descend(level - 1, acc2);
      }
    }
    c[level] = 0;
  };
  descend(n - 1, 0.0);

  // translate hits into input-basis coefficients and pick the canonical one
  ShortestVector out;
  bool first = true;
  for (auto& h : hits) {
    // drop hits that are not within tie tolerance of the final minimum
    Eigen::VectorXd coeff(n);
    for (int i = 0; i < n; ++i) coeff[i] = static_cast<double>(h[i]);
    double nrm2 = (b * coeff).squaredNorm();
    if (nrm2 > best_seen * (1 + 1e-9)) continue;
    std::vector<std::int64_t> in_input(n, 0);
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += red.unimodular[i][j] * h[j];
      in_input[i] = s;
    }
    in_input = canonical_sign(in_input);
    if (first || lex_less(in_input, out.coeffs)) {
      out.coeffs = in_input;
      first = false;
    }
  }
  if (first) throw std::runtime_error("shortest_vector: enumeration found nothing");
  Eigen::VectorXd coeff(n);
  for (int i = 0; i < n; ++i) coeff[i] = static_cast<double>(out.coeffs[i]);
  out.v = L.basis * coeff;
  out.norm = out.v.norm();
  return out;
}

double systole(const LatticeBasis& L) { return shortest_vector(L).norm; }

std::int64_t count_points(const LatticeBasis& L, double r) {
  if (!(r > 0)) throw std::invalid_argument("count_points: radius must be positive");
  int n = L.rank();
  if (n > 12) throw std::invalid_argument("count_points: rank > 12");
  LllResult red = lll_reduce(L);
  const Eigen::MatrixXd& b = red.reduced.basis;
  Eigen::MatrixXd R = cholesky_upper(b);
  double r2 = r * r * (1 + 1e-9);
  constexpr std::int64_t kGuard = 1'000'000'000;

  std::vector<std::int64_t> c(n, 0);
  std::int64_t total = 0;

  std::function<void(int, double)> descend = [&](int level, double accum) {
    double rem = r2 - accum;
    if (rem < 0) return;
    double center = 0;
    for (int j = level + 1; j < n; ++j) center += R(level, j) * c[j];
    double mid = -center / R(level, level);
    double w = std::sqrt(std::max(0.0, rem)) / R(level, level);
    auto lo = static_cast<std::int64_t>(std::ceil(mid - w - 1e-12));
    auto hi = static_cast<std::int64_t>(std::floor(mid + w + 1e-12));
    if (level == 0) {
      // innermost level is a line scan in ambient coordinates
      Eigen::VectorXd base = Eigen::VectorXd::Zero(b.rows());
      for (int j = 1; j < n; ++j) base += static_cast<double>(c[j]) * b.col(j);
      Eigen::VectorXd step = b.col(0);
      kernels::LineScan scan =
          kernels::line_scan(base.data(), step.data(), static_cast<std::size_t>(b.rows()),
                             lo - 1, hi + 2, r2);
      total += static_cast<std::int64_t>(scan.count);
      if (total > kGuard) throw std::runtime_error("count_points: more than 1e9 points");
      return;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      c[level] = v;
      double term = R(level, level) * (v - mid);
      descend(level - 1, accum + term * term);
    }
    c[level] = 0;
  };
  if (n == 1) {
    Eigen::VectorXd base = Eigen::VectorXd::Zero(b.rows());
    auto w = static_cast<std::int64_t>(std::floor(r / b.col(0).norm())) + 2;
    kernels::LineScan scan = kernels::line_scan(base.data(), b.col(0).data(),
                                                static_cast<std::size_t>(b.rows()), -w,
                                                w + 1, r2);
    total = static_cast<std::int64_t>(scan.count);
  } else {
    descend(n - 1, 0.0);
  }
  return total - 1;  // remove the origin
}

double wedge_norm(const Eigen::MatrixXd& B, const std::vector<int>& xi) {
  if (xi.empty()) throw std::invalid_argument("wedge_norm: empty index set");
  int k = static_cast<int>(xi.size());
  int n = static_cast<int>(B.rows());
  // Gram determinants cancel catastrophically for polynomially growing
  // columns; doubles are exact rationals, so sum squared minors exactly.
  BigRational s(0);
  for (const auto& rows : subsets_of_grade(n, k)) {
    MatQ sub(k, VecQ(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = BigRational(B(rows[i], xi[j]));
    BigRational d = matq_det(sub);
    s += d * d;
  }
  return std::sqrt(s.convert_to<double>());
}

}  // namespace tlab
