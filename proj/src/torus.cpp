#include "toruslab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tlab {

std::vector<double> TorusSpec::block_weights() const {
  std::vector<double> w;
  for (int v = 0; v < num_vertices(); ++v) w.push_back(block_size[v]);
  return w;
}

std::string TorusSpec::vertex_name(int v) const {
  if (v < l0) return std::to_string(v + 1);
  return "[L" + std::to_string(v - l0 + 1) + "]";
}

Eigen::VectorXd TorusSpec::to_block(const Eigen::VectorXd& u) const {
  return chart * u;
}

Eigen::VectorXd TorusSpec::to_chart(const Eigen::VectorXd& t) const {
  // chart columns are w-orthonormal: u = C^T W t with W = diag(weights)
  Eigen::VectorXd wt = t;
  std::vector<double> w = block_weights();
  for (int i = 0; i < wt.size(); ++i) wt[i] *= w[i];
  return chart.transpose() * wt;
}

double character_value(const WeightVector& w, const Eigen::VectorXd& t) {
  return w.character.dot(t);
}

namespace {

Eigen::MatrixXd chart_of_subspace(const std::vector<double>& weights) {
  int n = static_cast<int>(weights.size());
  int rank = n - 1;
  Eigen::VectorXd m(n);
  for (int i = 0; i < n; ++i) m[i] = std::sqrt(weights[i]);
  // orthonormal complement of m via Householder QR of [m | I]
  Eigen::MatrixXd M(n, 1);
  M.col(0) = m;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd C(n, rank);
  for (int k = 0; k < rank; ++k) {
    Eigen::VectorXd y = Q.col(k + 1);  // orthogonal to m
    for (int i = 0; i < n; ++i) y[i] /= std::sqrt(weights[i]);
    C.col(k) = y;
  }
  return C;
}

}  // namespace

TorusSpec build_torus(const RatPolynomial& p,
                      const std::vector<RatPolynomial>& factors,
                      int precision) {
  return build_torus(verify_factorization(p, factors), precision);
}

TorusSpec build_torus(const FactorReport& rep, int precision) {
  if (!rep.ok)
    throw std::invalid_argument("invalid torus data: " + rep.message);
  TorusSpec spec;
  spec.l0 = rep.l0;
  spec.split_roots = rep.split_roots;
  for (const auto& q : rep.field_polys)
    spec.fields.push_back(NumberField::create(q, precision));

  int slot = 0;
  for (int i = 0; i < spec.l0; ++i) {
    spec.block_start.push_back(slot);
    spec.block_size.push_back(1);
    slot += 1;
  }
  for (const auto& f : spec.fields) {
    spec.block_start.push_back(slot);
    spec.block_size.push_back(f->degree());
    slot += f->degree();
  }
  spec.N = slot;
  if (spec.N < 2) throw std::invalid_argument("torus needs N >= 2");

  // A0: identity on split slots, Vandermonde of the roots on each field block.
  spec.A0 = Eigen::MatrixXcd::Zero(spec.N, spec.N);
  for (int i = 0; i < spec.l0; ++i) spec.A0(i, i) = 1.0;
  for (size_t j = 0; j < spec.fields.size(); ++j) {
    const auto& f = spec.fields[j];
    int s0 = spec.block_start[spec.l0 + j];
    int m = f->degree();
    for (int row = 0; row < m; ++row) {
      std::complex<double> root = to_cd(f->roots()[row]);
      std::complex<double> pw = 1.0;
      for (int col = 0; col < m; ++col) {
        spec.A0(s0 + row, s0 + col) = pw;
        pw *= root;
      }
    }
  }
  spec.A0inv = spec.A0.inverse();

  // weight family: subsets of vertices, excluding empty and full
  int nv = spec.num_vertices();
  if (nv > 24) throw std::invalid_argument("too many blocks");
  for (unsigned mask = 1; mask + 1 < (1u << nv); ++mask) {
    WeightVector w;
    w.character = Eigen::VectorXd::Zero(nv);
    std::string name = "{";
    for (int v = 0; v < nv; ++v) {
      if (!(mask >> v & 1)) continue;
      w.vertices.push_back(v);
      for (int k = 0; k < spec.block_size[v]; ++k)
        w.index_set.push_back(spec.block_start[v] + k);
      w.character[v] = spec.block_size[v];
      if (name.size() > 1) name += ",";
      name += spec.vertex_name(v);
    }
    name += "}";
    w.name = name;
    std::sort(w.index_set.begin(), w.index_set.end());
    spec.weight_family.push_back(std::move(w));
  }

  spec.chart = chart_of_subspace(spec.block_weights());
  return spec;
}

Eigen::MatrixXd torus_element(const TorusSpec& spec, const LieParam& t) {
  if (static_cast<int>(t.split.size()) != spec.num_vertices())
    throw std::invalid_argument("split coordinate count mismatch");
  if (t.aniso.size() != spec.fields.size())
    throw std::invalid_argument("anisotropic coordinate count mismatch");
  // trace conditions
  double tr = 0;
  for (int v = 0; v < spec.num_vertices(); ++v)
    tr += spec.block_size[v] * t.split[v];
  if (std::abs(tr) > 1e-9)
    throw std::invalid_argument("split part is not trace-free");
  for (size_t j = 0; j < spec.fields.size(); ++j) {
    const auto& f = spec.fields[j];
    if (static_cast<int>(t.aniso[j].size()) != f->num_real() + f->num_complex_pairs())
      throw std::invalid_argument("anisotropic dof count mismatch");
    double s = 0;
    for (int k = 0; k < f->num_real(); ++k) {
      if (std::abs(t.aniso[j][k].imag()) > 1e-12)
        throw std::invalid_argument("real embedding coordinate must be real");
      s += t.aniso[j][k].real();
    }
    for (int k = 0; k < f->num_complex_pairs(); ++k)
      s += 2 * t.aniso[j][f->num_real() + k].real();
    if (std::abs(s) > 1e-9)
      throw std::invalid_argument("anisotropic part is not trace-free");
  }

  Eigen::VectorXcd diag(spec.N);
  for (int i = 0; i < spec.l0; ++i) diag[i] = std::exp(t.split[i]);
  for (size_t j = 0; j < spec.fields.size(); ++j) {
    const auto& f = spec.fields[j];
    int s0 = spec.block_start[spec.l0 + j];
    double tb = t.split[spec.l0 + j];
    int r = f->num_real(), s = f->num_complex_pairs();
    for (int k = 0; k < r; ++k)
      diag[s0 + k] = std::exp(tb + t.aniso[j][k].real());
    for (int k = 0; k < s; ++k) {
      std::complex<double> z = t.aniso[j][r + k];
      diag[s0 + r + 2 * k] = std::exp(std::complex<double>(tb, 0) + z);
      diag[s0 + r + 2 * k + 1] = std::exp(std::complex<double>(tb, 0) + std::conj(z));
    }
  }
  Eigen::MatrixXcd g = spec.A0inv * diag.asDiagonal() * spec.A0;
  double imag_resid = g.imag().cwiseAbs().maxCoeff();
  if (imag_resid > 1e-9)
    throw std::runtime_error("torus element has imaginary residue " +
                             std::to_string(imag_resid));
  Eigen::MatrixXd gr = g.real();
  double det = gr.determinant();
  if (std::abs(det - 1.0) > 1e-9)
    throw std::runtime_error("torus element determinant drifts from 1: " +
                             std::to_string(det));
  return gr;
}

Eigen::MatrixXcd diagonalize(const TorusSpec& spec, const Eigen::MatrixXd& g) {
  return spec.A0 * g * spec.A0inv;
}

double diagonalization_residual(const TorusSpec& spec, const Eigen::MatrixXd& g) {
  Eigen::MatrixXcd d = diagonalize(spec, g);
  double off = 0;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      if (i != j) off = std::max(off, std::abs(d(i, j)));
  return off;
}

MatQ torus_rational(const TorusSpec& spec, const VecQ& split_values,
                    const std::vector<FieldElement>& field_values) {
  if (static_cast<int>(split_values.size()) != spec.l0 ||
      field_values.size() != spec.fields.size())
    throw std::invalid_argument("rational torus data shape mismatch");
  MatQ g = matq_zero(spec.N, spec.N);
  BigRational det(1);
  for (int i = 0; i < spec.l0; ++i) {
    if (split_values[i] == 0) throw std::invalid_argument("zero split value");
    g[i][i] = split_values[i];
    det *= split_values[i];
  }
  for (size_t j = 0; j < spec.fields.size(); ++j) {
    if (field_values[j].field != spec.fields[j])
      throw std::invalid_argument("field element belongs to the wrong field");
    MatQ rep = field_values[j].regular_rep();
    int s0 = spec.block_start[spec.l0 + j];
    int m = spec.fields[j]->degree();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) g[s0 + a][s0 + b] = rep[a][b];
    det *= field_values[j].norm();
  }
  if (det != 1)
    throw std::invalid_argument("rational torus element determinant is " +
                                rat_to_string(det) + ", not 1");
  return g;
}

LieParam sample_lie(const TorusSpec& spec, const LieBox& box, RngStream& rng) {
  if (static_cast<int>(box.split.size()) != spec.split_rank())
    throw std::invalid_argument("split box must cover the free coordinates");
  if (box.aniso.size() != spec.fields.size())
    throw std::invalid_argument("anisotropic box count mismatch");
  LieParam t;
  int nv = spec.num_vertices();
  t.split.assign(nv, 0.0);
  double acc = 0;
  for (int v = 0; v + 1 < nv; ++v) {
    auto [lo, hi] = box.split[v];
    if (!(lo <= hi)) throw std::invalid_argument("empty split box interval");
    t.split[v] = rng.uniform(lo, hi);
    acc += spec.block_size[v] * t.split[v];
  }
  t.split[nv - 1] = -acc / spec.block_size[nv - 1];
  t.aniso = sample_aniso(spec, box.aniso, rng);
  return t;
}

std::vector<std::vector<std::complex<double>>> sample_aniso(
    const TorusSpec& spec,
    const std::vector<std::vector<std::pair<double, double>>>& boxes, RngStream& rng) {
  if (boxes.size() != spec.fields.size())
    throw std::invalid_argument("anisotropic box count mismatch");
  std::vector<std::vector<std::complex<double>>> out;
  for (size_t j = 0; j < spec.fields.size(); ++j) {
    const auto& f = spec.fields[j];
    int r = f->num_real(), s = f->num_complex_pairs();
    int free_dofs = r + 2 * s - 1;
    if (static_cast<int>(boxes[j].size()) != free_dofs)
      throw std::invalid_argument("anisotropic box size mismatch for field " +
                                  std::to_string(j + 1));
    std::vector<std::complex<double>> u(r + s, 0.0);
    int bi = 0;
    double trace_acc = 0;
    if (s == 0) {
      for (int k = 0; k + 1 < r; ++k) {
        auto [lo, hi] = boxes[j][bi++];
        u[k] = rng.uniform(lo, hi);
        trace_acc += u[k].real();
      }
      u[r - 1] = -trace_acc;
    } else {
      for (int k = 0; k < r; ++k) {
        auto [lo, hi] = boxes[j][bi++];
        u[k] = rng.uniform(lo, hi);
        trace_acc += u[k].real();
      }
      for (int k = 0; k < s; ++k) {
        double re = 0, im = 0;
        if (k + 1 < s) {
          auto [rlo, rhi] = boxes[j][bi++];
          re = rng.uniform(rlo, rhi);
          trace_acc += 2 * re;
        }
        auto [ilo, ihi] = boxes[j][bi++];
        im = rng.uniform(ilo, ihi);
        if (k + 1 < s) {
          u[r + k] = {re, im};
        } else {
          u[r + k] = {-trace_acc / 2.0, im};  // dependent real part
        }
      }
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace tlab
