#pragma once

#include <memory>
#include <string>
#include <vector>

#include "toruslab/floats.hpp"
#include "toruslab/matq.hpp"
#include "toruslab/numberfield.hpp"
#include "toruslab/rng.hpp"

namespace tlab {

// Identification of O_M^N with Z^D, D = N * deg(M), via the power basis
// w_0..w_{m0-1} of O_M. Coordinate layout is k-major: index(k, j) = k*N + j,
// i.e. all N slots of basis element w_k come before those of w_{k+1}.
struct GeometricEmbedding {
  FieldPtr field;
  int N = 0;
  int m0 = 0;  // degree of the field
  int D = 0;   // N * m0
  // Real coordinates of the defining basis under the archimedean embeddings:
  // column (k*N + j) holds the vector (w_k e_j)'. Real places contribute one
  // row each, complex places sqrt2*Re and sqrt2*Im rows.
  std::vector<std::vector<Float50>> basis_real;  // D rows x D cols
  double c_w = 0.0;   // norm-map constant measured at e_1
  Float50 c_w_f;      // same, full precision
  int r1 = 0, s1 = 0; // signature of the field
};

GeometricEmbedding geom_embedding(FieldPtr field, int N);

using FieldVec = std::vector<FieldElement>;  // length N over O_M
using FieldMat = std::vector<FieldVec>;      // rows of length N

// Exact integer/rational coordinates of v in the defining basis.
VecQ geom_embed(const GeometricEmbedding& emb, const FieldVec& v);

// Archimedean coordinates of a lattice vector given in defining-basis coords.
std::vector<Float50> embed_real(const GeometricEmbedding& emb, const VecQ& coords);

// Norm map on a list of linearly independent vectors: the image lattice is
// spanned by {w_k v_i}, ordered i-major (all m0 multiples of v_1 first).
struct NormImage {
  std::vector<VecQ> vectors;  // a*m0 defining-basis coordinate vectors
  VecQ wedge;                 // grade a*m0 wedge coordinates, exact
  int grade = 0;
};
NormImage norm_map(const GeometricEmbedding& emb, const std::vector<FieldVec>& vs);

// Matrix of x -> g x on Z^D in defining-basis coordinates, exact.
MatQ matrix_on_lattice(const GeometricEmbedding& emb, const FieldMat& g);

FieldElement field_mat_det(FieldPtr field, const FieldMat& g);
FieldVec field_mat_apply(const FieldMat& g, const FieldVec& v);

// Dual-route check of compound(g') N(v) == N(g v); g must have det 1.
struct EquivarianceReport {
  bool ok = false;
  std::string message;
};
EquivarianceReport equivariance_check(const GeometricEmbedding& emb, const FieldMat& g,
                                      const std::vector<FieldVec>& vs);

// Covolume of the span of archimedean vectors, via the Gram determinant.
Float50 covolume(const std::vector<std::vector<Float50>>& vecs);

// ||N(v)|| against the collapse bound kappa * ||v'||^{m0}.
struct MarginReport {
  double norm_image = 0.0;  // covolume of the norm-map image of {v}
  double vec_norm = 0.0;    // ||v'||
  double ratio = 0.0;       // norm_image / vec_norm^{m0}
  double bound = 0.0;       // c_w * (q/m0)^{m0/2}
  bool within = false;
};
MarginReport covolume_decrease_margin(const GeometricEmbedding& emb, const FieldVec& v);

// Random element of SL_N(O_M): a product of elementary integral shears.
FieldMat random_sl(const GeometricEmbedding& emb, RngStream& rng, int shears = 6,
                   int coeff_bound = 2);
FieldVec random_vector(const GeometricEmbedding& emb, RngStream& rng, int coeff_bound = 4);

}  // namespace tlab
