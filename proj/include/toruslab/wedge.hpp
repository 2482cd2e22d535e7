#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "toruslab/matq.hpp"

namespace tlab {

// Exterior-power coordinates over the standard basis e_S, S a sorted index
// subset. Subsets of fixed grade are ordered lexicographically.
std::vector<std::vector<int>> subsets_of_grade(int dim, int grade);
std::int64_t binomial(int n, int k);
int subset_rank(const std::vector<int>& s, int dim);  // lex rank within its grade

// Wedge of column vectors: coordinate at S is det(cols restricted to rows S).
VecQ wedge_coords(const MatQ& columns, int dim);
Eigen::VectorXd wedge_coords(const Eigen::MatrixXd& columns);

// Exact action of the grade-k compound of g on wedge coordinates:
// (compound(g) w)_S = sum_T det(g[S,T]) w_T. Uses fraction-free integer
// determinants when g is integral.
VecQ compound_apply(const MatQ& g, int grade, const VecQ& w);

// det of the square submatrix of m with the given rows/columns.
BigRational minor_det(const MatQ& m, const std::vector<int>& rows,
                      const std::vector<int>& cols);

}  // namespace tlab
