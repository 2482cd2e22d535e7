#include "toruslab/wedge.hpp"

#include <stdexcept>

namespace tlab {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<int>> subsets_of_grade(int dim, int grade) {
  std::vector<std::vector<int>> out;
  if (grade < 0 || grade > dim) return out;
  std::vector<int> cur(grade);
  for (int i = 0; i < grade; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = grade - 1;
    while (i >= 0 && cur[i] == dim - grade + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < grade; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int subset_rank(const std::vector<int>& s, int dim) {
  // lexicographic rank among sorted grade-|s| subsets of {0..dim-1}
  int grade = static_cast<int>(s.size());
  std::int64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < grade; ++i) {
    for (int v = prev + 1; v < s[i]; ++v)
      rank += binomial(dim - 1 - v, grade - 1 - i);
    prev = s[i];
  }
  return static_cast<int>(rank);
}

BigRational minor_det(const MatQ& m, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  int k = static_cast<int>(rows.size());
  if (k != static_cast<int>(cols.size())) throw std::invalid_argument("minor_det: shape");
  MatQ sub(k, VecQ(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub[i][j] = m[rows[i]][cols[j]];
  return matq_det(sub);
}

namespace {

// Bareiss fraction-free determinant for integer matrices.
BigInt det_int_bareiss(std::vector<std::vector<BigInt>> a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool all_integer(const MatQ& g) {
  for (const auto& row : g)
    for (const auto& x : row)
      if (boost::multiprecision::denominator(x) != 1) return false;
  return true;
}

}  // namespace

VecQ wedge_coords(const MatQ& columns, int dim) {
  if (static_cast<int>(columns.size()) != dim) throw std::invalid_argument("wedge_coords: row count");
  int k = columns.empty() ? 0 : static_cast<int>(columns[0].size());
  auto subs = subsets_of_grade(dim, k);
  VecQ out(subs.size());
  std::vector<int> allcols(k);
  for (int j = 0; j < k; ++j) allcols[j] = j;
  for (size_t s = 0; s < subs.size(); ++s) out[s] = minor_det(columns, subs[s], allcols);
  return out;
}

Eigen::VectorXd wedge_coords(const Eigen::MatrixXd& columns) {
  int dim = static_cast<int>(columns.rows());
  int k = static_cast<int>(columns.cols());
  auto subs = subsets_of_grade(dim, k);
  Eigen::VectorXd out(static_cast<int>(subs.size()));
  Eigen::MatrixXd sub(k, k);
  for (size_t s = 0; s < subs.size(); ++s) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = columns(subs[s][i], j);
    out[static_cast<int>(s)] = k == 0 ? 1.0 : sub.determinant();
  }
  return out;
}

VecQ compound_apply(const MatQ& g, int grade, const VecQ& w) {
  int dim = static_cast<int>(g.size());
  auto subs = subsets_of_grade(dim, grade);
  if (w.size() != subs.size()) throw std::invalid_argument("compound_apply: wedge size");
  VecQ out(subs.size(), BigRational(0));
  bool integral = all_integer(g);
  std::vector<std::vector<BigInt>> gi;
  if (integral) {
    gi.assign(dim, std::vector<BigInt>(dim));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) gi[i][j] = boost::multiprecision::numerator(g[i][j]);
  }
  for (size_t t = 0; t < subs.size(); ++t) {
    if (w[t] == 0) continue;
    for (size_t s = 0; s < subs.size(); ++s) {
      BigRational d;
      if (integral) {
        std::vector<std::vector<BigInt>> sub(grade, std::vector<BigInt>(grade));
        for (int i = 0; i < grade; ++i)
          for (int j = 0; j < grade; ++j) sub[i][j] = gi[subs[s][i]][subs[t][j]];
        d = BigRational(det_int_bareiss(std::move(sub)));
      } else {
        d = minor_det(g, subs[s], subs[t]);
      }
      if (d != 0) out[s] += d * w[t];
    }
  }
  return out;
}

}  // namespace tlab
