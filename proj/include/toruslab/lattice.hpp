#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "toruslab/matq.hpp"

namespace tlab {

struct LatticeBasis {
  Eigen::MatrixXd basis;  // columns are basis vectors
  bool has_exact = false;
  MatQ exact;             // exact column matrix when the lattice is rational
  double abs_det = 0.0;
  int rank() const { return static_cast<int>(basis.cols()); }
};

LatticeBasis make_lattice(const Eigen::MatrixXd& basis);
LatticeBasis make_lattice_exact(const MatQ& cols);

struct LllResult {
  LatticeBasis reduced;
  std::vector<std::vector<std::int64_t>> unimodular;  // reduced = input * U
};
LllResult lll_reduce(const LatticeBasis& L, double delta = 0.99);

struct ShortestVector {
  Eigen::VectorXd v;
  std::vector<std::int64_t> coeffs;  // in the input basis, sign-canonical
  double norm = 0.0;
};
// Exact minimizer by Fincke-Pohst after LLL; ties broken lexicographically on
// the input-basis coefficient vector with first nonzero coefficient positive.
ShortestVector shortest_vector(const LatticeBasis& L);

double systole(const LatticeBasis& L);

// #{v in L, v != 0, ||v|| <= r}; enumeration radius inflated by 1+1e-9.
std::int64_t count_points(const LatticeBasis& L, double r);

double wedge_norm(const Eigen::MatrixXd& B, const std::vector<int>& xi);

}  // namespace tlab
