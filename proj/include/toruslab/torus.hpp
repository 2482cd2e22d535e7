#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "toruslab/numberfield.hpp"
#include "toruslab/rng.hpp"

namespace tlab {

// A multiplicative character of the split part, xi in the weight family:
// a union of split slots and whole anisotropic blocks.
struct WeightVector {
  std::vector<int> vertices;    // 0-based vertex ids (split slots, then l0+j per field)
  std::vector<int> index_set;   // underlying 0-based matrix indices, sorted
  Eigen::VectorXd character;    // chi(t) = character . t in block coordinates
  std::string name;
};

// Maximal Q-torus of SL_N assembled from a split part and number-field blocks,
// ordered split-first. Block coordinates are (t_1..t_l0, t_[1]..t_[a0]).
struct TorusSpec {
  int N = 0;
  int l0 = 0;
  std::vector<BigRational> split_roots;       // roots of the split factor
  std::vector<FieldPtr> fields;               // anisotropic factors
  std::vector<int> block_start;               // first matrix slot per vertex
  std::vector<int> block_size;                // 1 for split slots, degree per field
  Eigen::MatrixXcd A0, A0inv;                 // block-diagonalizing matrix
  std::vector<WeightVector> weight_family;    // 2^vertices minus empty & full
  Eigen::MatrixXd chart;                      // (l0+a0) x rank, orthonormal in the
                                              // multiplicity-weighted metric
  int num_vertices() const { return l0 + static_cast<int>(fields.size()); }
  int split_rank() const { return num_vertices() - 1; }
  std::vector<double> block_weights() const;  // multiplicities (1 or degree)
  std::string vertex_name(int v) const;

  // chart coordinates -> block coordinates and back
  Eigen::VectorXd to_block(const Eigen::VectorXd& u) const;
  Eigen::VectorXd to_chart(const Eigen::VectorXd& t) const;
};

// Lie(T(R)) parameter: split block coordinates plus, per field, one complex
// coordinate per embedding class (real embeddings carry real values).
struct LieParam {
  std::vector<double> split;  // length l0 + a0, multiplicity-weighted sum 0
  std::vector<std::vector<std::complex<double>>> aniso;  // per field, length r+s
};

TorusSpec build_torus(const FactorReport& factors, int precision = 30);
TorusSpec build_torus(const RatPolynomial& p,
                      const std::vector<RatPolynomial>& factors,
                      int precision = 30);

// exp of the Lie parameter conjugated into SL_N; validates reality, det and
// diagonalization residuals.
Eigen::MatrixXd torus_element(const TorusSpec& spec, const LieParam& t);

// A0 g A0^{-1}; off-diagonal mass should vanish for torus elements.
Eigen::MatrixXcd diagonalize(const TorusSpec& spec, const Eigen::MatrixXd& g);
double diagonalization_residual(const TorusSpec& spec, const Eigen::MatrixXd& g);

// Exact rational torus element from split values and field units;
// det (= product of split values times field norms) must be 1.
MatQ torus_rational(const TorusSpec& spec, const VecQ& split_values,
                    const std::vector<FieldElement>& field_values);

// Uniform sample from a box in the free Lie coordinates; the dependent
// coordinate of each trace condition is solved exactly.
struct LieBox {
  std::vector<std::pair<double, double>> split;  // per free split coordinate (rank many)
  std::vector<std::vector<std::pair<double, double>>> aniso;  // per field, per free dof
};
LieParam sample_lie(const TorusSpec& spec, const LieBox& box, RngStream& rng);

// Anisotropic coordinates only, same box semantics as LieBox::aniso.
std::vector<std::vector<std::complex<double>>> sample_aniso(
    const TorusSpec& spec,
    const std::vector<std::vector<std::pair<double, double>>>& boxes, RngStream& rng);

// Convenience: the character pairing chi_xi(t) for block coordinates t.
double character_value(const WeightVector& w, const Eigen::VectorXd& t_block);

}  // namespace tlab
