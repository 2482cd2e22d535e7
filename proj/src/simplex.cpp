#include "toruslab/simplex.hpp"

#include <stdexcept>

namespace tlab {

namespace {

// Tableau with explicit basis bookkeeping. Columns: structural variables
// (free x split as x+ - x-), surplus columns, artificial columns, rhs.
struct Tableau {
  MatQ rows;              // m x (ncols+1), last column is rhs
  std::vector<size_t> basis;  // basis[i] = column basic in row i
  size_t ncols = 0;

  void pivot(size_t r, size_t col) {
    BigRational inv = BigRational(1) / rows[r][col];
    for (auto& v : rows[r]) v *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      BigRational f = rows[i][col];
      for (size_t j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = col;
  }
};

// Minimize cost.x with Bland's rule; cost given per column. Returns false if
// unbounded. Restricted to columns < limit (used to freeze artificials out).
bool simplex_min(Tableau& t, const VecQ& cost, size_t limit) {
  size_t m = t.rows.size();
  while (true) {
    // reduced costs: c_j - c_B . B^-1 A_j, computed directly
    VecQ y(m);
    for (size_t i = 0; i < m; ++i) y[i] = cost[t.basis[i]];
    size_t enter = limit;
    for (size_t j = 0; j < limit; ++j) {
      BigRational red = cost[j];
      for (size_t i = 0; i < m; ++i)
        if (t.rows[i][j] != 0 && y[i] != 0) red -= y[i] * t.rows[i][j];
      if (red < 0) { enter = j; break; }  // Bland: first improving column
    }
    if (enter == limit) return true;  // optimal
    size_t leave = m;
    BigRational best;
    for (size_t i = 0; i < m; ++i) {
      if (t.rows[i][enter] <= 0) continue;
      BigRational ratio = t.rows[i][t.ncols] / t.rows[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && t.basis[i] < t.basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return false;  // unbounded
    t.pivot(leave, enter);
  }
}

}  // namespace

LpResult lp_solve(const LpProblem& p) {
  size_t n = p.num_vars();
  size_t meq = p.Aeq.size(), mge = p.Age.size();
  size_t m = meq + mge;
  size_t nsplit = 2 * n;           // x = xp - xm
  size_t nsurplus = mge;
  size_t nart = m;
  size_t ncols = nsplit + nsurplus + nart;

  Tableau t;
  t.ncols = ncols;
  t.rows = matq_zero(m, ncols + 1);
  t.basis.resize(m);

  auto fill_row = [&](size_t r, const VecQ& a, const BigRational& b, bool ge, size_t geIdx) {
    for (size_t j = 0; j < n; ++j) {
      t.rows[r][j] = a[j];
      t.rows[r][n + j] = -a[j];
    }
    if (ge) t.rows[r][nsplit + geIdx] = BigRational(-1);
    t.rows[r][ncols] = b;
    if (t.rows[r][ncols] < 0)
      for (size_t j = 0; j <= ncols; ++j) t.rows[r][j] = -t.rows[r][j];
  };

  for (size_t i = 0; i < meq; ++i) fill_row(i, p.Aeq[i], p.beq[i], false, 0);
  for (size_t i = 0; i < mge; ++i) fill_row(meq + i, p.Age[i], p.bge[i], true, i);
  for (size_t i = 0; i < m; ++i) {
    t.rows[i][nsplit + nsurplus + i] = 1;
    t.basis[i] = nsplit + nsurplus + i;
  }

  // Phase 1: minimize sum of artificials.
  VecQ cost1(ncols, BigRational(0));
  for (size_t i = 0; i < nart; ++i) cost1[nsplit + nsurplus + i] = 1;
  if (!simplex_min(t, cost1, ncols))
    throw std::logic_error("phase-1 simplex unbounded");
  BigRational art_sum(0);
  for (size_t i = 0; i < m; ++i)
    if (t.basis[i] >= nsplit + nsurplus) art_sum += t.rows[i][ncols];
  LpResult out;
  if (art_sum != 0) {
    out.status = LpResult::Status::Infeasible;
    return out;
  }
  // Drive leftover artificials out of the basis where possible.
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] < nsplit + nsurplus) continue;
    size_t enter = ncols;
    for (size_t j = 0; j < nsplit + nsurplus; ++j)
      if (t.rows[i][j] != 0) { enter = j; break; }
    if (enter != ncols) t.pivot(i, enter);
  }

  // Phase 2: minimize -c.x over structural columns only.
  VecQ cost2(ncols, BigRational(0));
  for (size_t j = 0; j < n; ++j) {
    cost2[j] = -p.c[j];
    cost2[n + j] = p.c[j];
  }
  if (!simplex_min(t, cost2, nsplit + nsurplus)) {
    out.status = LpResult::Status::Unbounded;
    return out;
  }

  out.status = LpResult::Status::Optimal;
  out.x.assign(n, BigRational(0));
  for (size_t i = 0; i < m; ++i) {
    size_t b = t.basis[i];
    if (b < n) out.x[b] += t.rows[i][ncols];
    else if (b < nsplit) out.x[b - n] -= t.rows[i][ncols];
  }
  out.value = BigRational(0);
  for (size_t j = 0; j < n; ++j) out.value += p.c[j] * out.x[j];
  return out;
}

std::optional<VecQ> lp_feasible_point(const MatQ& Aeq, const VecQ& beq,
                                      const MatQ& Age, const VecQ& bge,
                                      size_t nvars) {
  LpProblem p;
  p.Aeq = Aeq; p.beq = beq; p.Age = Age; p.bge = bge;
  p.c = VecQ(nvars, BigRational(0));
  LpResult r = lp_solve(p);
  if (r.status != LpResult::Status::Optimal) return std::nullopt;
  return r.x;
}

}  // namespace tlab
