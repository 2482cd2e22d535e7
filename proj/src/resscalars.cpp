#include "toruslab/resscalars.hpp"

#include <cmath>
#include <stdexcept>

#include "toruslab/wedge.hpp"

namespace tlab {

namespace {

Float50 sqrt2_f() {
  static const Float50 s = sqrt(Float50(2));
  return s;
}

FieldElement basis_elem(const FieldPtr& f, int k) {
  VecQ c(f->degree(), BigRational(0));
  c[k] = 1;
  return FieldElement(f, std::move(c));
}

}  // namespace

GeometricEmbedding geom_embedding(FieldPtr field, int N) {
  if (!field) throw std::invalid_argument("geom_embedding: null field");
  if (N < 2) throw std::invalid_argument("geom_embedding: N must be >= 2");
  GeometricEmbedding emb;
  emb.field = field;
  emb.N = N;
  emb.m0 = field->degree();
  emb.D = N * emb.m0;
  emb.r1 = field->num_real();
  emb.s1 = field->num_complex_pairs();
  const auto& roots = field->roots();

  // Powers of each root; conjugate-pair representatives sit at r1, r1+2, ...
  std::vector<std::vector<CF>> pw(emb.m0, std::vector<CF>(emb.m0));
  for (int i = 0; i < emb.m0; ++i) {
    CF acc{Float50(1), Float50(0)};
    for (int k = 0; k < emb.m0; ++k) {
      pw[i][k] = acc;
      acc = acc * roots[i];
    }
  }

  emb.basis_real.assign(emb.D, std::vector<Float50>(emb.D, Float50(0)));
  for (int k = 0; k < emb.m0; ++k)
    for (int j = 0; j < N; ++j) {
      int col = k * N + j;
      for (int p = 0; p < emb.r1; ++p) emb.basis_real[p * N + j][col] = pw[p][k].re;
      for (int q = 0; q < emb.s1; ++q) {
        const CF& z = pw[emb.r1 + 2 * q][k];
        int base = emb.r1 * N + q * 2 * N;
        emb.basis_real[base + 2 * j][col] = sqrt2_f() * z.re;
        emb.basis_real[base + 2 * j + 1][col] = sqrt2_f() * z.im;
      }
    }

  // c_w = covolume of the image of O_M e_1; with the trace-form scaling this
  // equals |det(tau_i(w_k))| = sqrt(|disc q|).
  std::vector<std::vector<Float50>> cols(emb.m0);
  for (int k = 0; k < emb.m0; ++k) {
    cols[k].resize(emb.D);
    for (int r = 0; r < emb.D; ++r) cols[k][r] = emb.basis_real[r][k * N];
  }
  emb.c_w_f = covolume(cols);
  emb.c_w = emb.c_w_f.convert_to<double>();
  return emb;
}

VecQ geom_embed(const GeometricEmbedding& emb, const FieldVec& v) {
  if (static_cast<int>(v.size()) != emb.N) throw std::invalid_argument("geom_embed: length");
  VecQ out(emb.D, BigRational(0));
  for (int j = 0; j < emb.N; ++j) {
    if (v[j].field->poly().coeffs() != emb.field->poly().coeffs())
      throw std::invalid_argument("geom_embed: element from a different field");
    for (int k = 0; k < emb.m0; ++k) out[k * emb.N + j] = v[j].coords[k];
  }
  return out;
}

std::vector<Float50> embed_real(const GeometricEmbedding& emb, const VecQ& coords) {
  if (static_cast<int>(coords.size()) != emb.D) throw std::invalid_argument("embed_real: length");
  std::vector<Float50> out(emb.D, Float50(0));
  for (int c = 0; c < emb.D; ++c) {
    if (coords[c] == 0) continue;
    Float50 x(rat_to_double(coords[c]));
    // exact for the integral vectors used here; rationalize via num/den otherwise
    if (boost::multiprecision::denominator(coords[c]) != 1)
      x = Float50(boost::multiprecision::numerator(coords[c]).str()) /
          Float50(boost::multiprecision::denominator(coords[c]).str());
    for (int r = 0; r < emb.D; ++r) out[r] += emb.basis_real[r][c] * x;
  }
  return out;
}

NormImage norm_map(const GeometricEmbedding& emb, const std::vector<FieldVec>& vs) {
  NormImage img;
  img.grade = static_cast<int>(vs.size()) * emb.m0;
  if (img.grade == 0 || img.grade > emb.D)
    throw std::invalid_argument("norm_map: need 1..N vectors");
  for (const auto& v : vs)
    for (int k = 0; k < emb.m0; ++k) {
      FieldVec wv(v.size());
      FieldElement wk = basis_elem(emb.field, k);
      for (size_t j = 0; j < v.size(); ++j) wv[j] = v[j] * wk;
      img.vectors.push_back(geom_embed(emb, wv));
    }
  MatQ cols(emb.D, VecQ(img.vectors.size()));
  for (size_t c = 0; c < img.vectors.size(); ++c)
    for (int r = 0; r < emb.D; ++r) cols[r][c] = img.vectors[c][r];
  img.wedge = wedge_coords(cols, emb.D);
  return img;
}

MatQ matrix_on_lattice(const GeometricEmbedding& emb, const FieldMat& g) {
  if (static_cast<int>(g.size()) != emb.N) throw std::invalid_argument("matrix_on_lattice: shape");
  MatQ out(emb.D, VecQ(emb.D, BigRational(0)));
  for (int k = 0; k < emb.m0; ++k) {
    FieldElement wk = basis_elem(emb.field, k);
    for (int j = 0; j < emb.N; ++j) {
      // image of basis vector w_k e_j is the column (g_{ij} w_k)_i
      FieldVec col(emb.N);
      for (int i = 0; i < emb.N; ++i) col[i] = g[i][j] * wk;
      VecQ cc = geom_embed(emb, col);
      for (int r = 0; r < emb.D; ++r) out[r][k * emb.N + j] = cc[r];
    }
  }
  return out;
}

FieldElement field_mat_det(FieldPtr field, const FieldMat& g) {
  int n = static_cast<int>(g.size());
  FieldMat a = g;
  FieldElement det = FieldElement::from_rational(field, BigRational(1));
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!a[r][c].is_zero()) { p = r; break; }
    if (p < 0) return FieldElement::from_rational(field, BigRational(0));
    if (p != c) { std::swap(a[p], a[c]); sign = -sign; }
    det = det * a[c][c];
    FieldElement inv = a[c][c].inverse();
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      FieldElement f = a[r][c] * inv;
      for (int cc = c; cc < n; ++cc) a[r][cc] = a[r][cc] - f * a[c][cc];
    }
  }
  if (sign < 0) det = det * BigRational(-1);
  return det;
}

FieldVec field_mat_apply(const FieldMat& g, const FieldVec& v) {
  int n = static_cast<int>(g.size());
  FieldVec out(n);
  for (int i = 0; i < n; ++i) {
    FieldElement acc = FieldElement::from_rational(v[0].field, BigRational(0));
    for (int j = 0; j < n; ++j) acc = acc + g[i][j] * v[j];
    out[i] = acc;
  }
  return out;
}

EquivarianceReport equivariance_check(const GeometricEmbedding& emb, const FieldMat& g,
                                      const std::vector<FieldVec>& vs) {
  EquivarianceReport rep;
  FieldElement det = field_mat_det(emb.field, g);
  VecQ one(emb.m0, BigRational(0));
  one[0] = 1;
  if (det.coords != one) {
    rep.message = "determinant is not 1";
    return rep;
  }
  NormImage lhs_src = norm_map(emb, vs);
  MatQ gz = matrix_on_lattice(emb, g);
  VecQ lhs = compound_apply(gz, lhs_src.grade, lhs_src.wedge);

  std::vector<FieldVec> gvs(vs.size());
  for (size_t i = 0; i < vs.size(); ++i) gvs[i] = field_mat_apply(g, vs[i]);
  VecQ rhs = norm_map(emb, gvs).wedge;

  if (lhs.size() != rhs.size()) {
    rep.message = "wedge size mismatch";
    return rep;
  }
  for (size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] != rhs[i]) {
      rep.message = "coordinate mismatch at index " + std::to_string(i);
      return rep;
    }
  rep.ok = true;
  rep.message = "exact match on " + std::to_string(lhs.size()) + " coordinates";
  return rep;
}

Float50 covolume(const std::vector<std::vector<Float50>>& vecs) {
  int k = static_cast<int>(vecs.size());
  if (k == 0) return Float50(1);
  std::vector<std::vector<Float50>> gram(k, std::vector<Float50>(k, Float50(0)));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Float50 s(0);
      for (size_t r = 0; r < vecs[i].size(); ++r) s += vecs[i][r] * vecs[j][r];
      gram[i][j] = gram[j][i] = s;
    }
  // determinant by plain elimination; Gram matrices here are well conditioned
  Float50 det(1);
  for (int c = 0; c < k; ++c) {
    int p = c;
    for (int r = c + 1; r < k; ++r)
      if (abs(gram[r][c]) > abs(gram[p][c])) p = r;
    if (p != c) { std::swap(gram[p], gram[c]); det = -det; }
    if (gram[c][c] == 0) return Float50(0);
    det *= gram[c][c];
    for (int r = c + 1; r < k; ++r) {
      Float50 f = gram[r][c] / gram[c][c];
      for (int cc = c; cc < k; ++cc) gram[r][cc] -= f * gram[c][cc];
    }
  }
  if (det < 0) det = -det;
  return sqrt(det);
}

MarginReport covolume_decrease_margin(const GeometricEmbedding& emb, const FieldVec& v) {
  MarginReport rep;
  NormImage img = norm_map(emb, {v});
  std::vector<std::vector<Float50>> real_vecs;
  real_vecs.reserve(img.vectors.size());
  for (const auto& c : img.vectors) real_vecs.push_back(embed_real(emb, c));
  Float50 ni = covolume(real_vecs);

  std::vector<Float50> vr = embed_real(emb, geom_embed(emb, v));
  Float50 n2(0);
  for (const auto& x : vr) n2 += x * x;
  Float50 vn = sqrt(n2);
  if (vn == 0) throw std::invalid_argument("covolume_decrease_margin: zero vector");

  Float50 ratio = ni / pow(vn, emb.m0);
  // AM-GM over the m0 archimedean pieces: ||N v|| <= c_w (||v'||^2 / m0)^(m0/2)
  Float50 bound = emb.c_w_f / pow(Float50(emb.m0), Float50(emb.m0) / 2);
  rep.norm_image = ni.convert_to<double>();
  rep.vec_norm = vn.convert_to<double>();
  rep.ratio = ratio.convert_to<double>();
  rep.bound = bound.convert_to<double>();
  rep.within = ratio <= bound * (1 + Float50("1e-12"));
  return rep;
}

FieldMat random_sl(const GeometricEmbedding& emb, RngStream& rng, int shears,
                   int coeff_bound) {
  int n = emb.N;
  FieldMat g(n, FieldVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g[i][j] = FieldElement::from_rational(emb.field, BigRational(i == j ? 1 : 0));
  for (int s = 0; s < shears; ++s) {
    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    VecQ c(emb.m0);
    bool nz = false;
    for (int k = 0; k < emb.m0; ++k) {
      c[k] = BigRational(rng.uniform_int(-coeff_bound, coeff_bound));
      if (c[k] != 0) nz = true;
    }
    if (!nz) c[0] = 1;
    FieldElement x(emb.field, std::move(c));
    // row op: row_i += x * row_j, det stays 1
    for (int cc = 0; cc < n; ++cc) g[i][cc] = g[i][cc] + x * g[j][cc];
  }
  return g;
}

FieldVec random_vector(const GeometricEmbedding& emb, RngStream& rng, int coeff_bound) {
  FieldVec v(emb.N);
  bool nz = false;
  while (!nz) {
    for (int j = 0; j < emb.N; ++j) {
      VecQ c(emb.m0);
      for (int k = 0; k < emb.m0; ++k) {
        c[k] = BigRational(rng.uniform_int(-coeff_bound, coeff_bound));
        if (c[k] != 0) nz = true;
      }
      v[j] = FieldElement(emb.field, std::move(c));
    }
  }
  return v;
}

}  // namespace tlab
