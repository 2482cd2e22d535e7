#include "toruslab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "toruslab/simplex.hpp"
#include "toruslab/wedge.hpp"

namespace tlab {

const BlockPattern::Entry& BlockPattern::at(int xi, int zeta) const {
  for (const auto& e : entries)
    if (e.xi == xi && e.zeta == zeta) return e;
  throw std::out_of_range("BlockPattern::at: no such pair");
}

bool DivergenceGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : edges)
    if (e.first == i && e.second == j) return true;
  return false;
}

namespace {

double block_norm(const Eigen::MatrixXd& m, const TorusSpec& spec, int vi, int vj) {
  return m.block(spec.block_start[vi], spec.block_start[vj], spec.block_size[vi],
                 spec.block_size[vj])
      .norm();
}

}  // namespace

BlockPattern classify_blocks(const TorusSpec& spec, const UnipotentSampler& u,
                             const std::vector<double>& sample_indices,
                             double zero_tol, double diverge_factor) {
  if (sample_indices.size() < 4)
    throw std::invalid_argument("classify_blocks: need at least 4 sample indices");
  for (size_t k = 1; k < sample_indices.size(); ++k)
    if (sample_indices[k] <= sample_indices[k - 1])
      throw std::invalid_argument("classify_blocks: sample indices must increase");

  int nv = spec.num_vertices();
  BlockPattern pat;
  for (int v = 0; v < nv; ++v) pat.vertex_names.push_back(spec.vertex_name(v));

  std::vector<Eigen::MatrixXd> samples;
  samples.reserve(sample_indices.size());
  for (double i : sample_indices) {
    Eigen::MatrixXd m = u(i);
    if (m.rows() != spec.N || m.cols() != spec.N)
      throw std::invalid_argument("classify_blocks: sampler returned wrong shape");
    // shape checks: block upper-triangular with identity diagonal blocks
    for (int vi = 0; vi < nv; ++vi) {
      for (int vj = 0; vj < vi; ++vj)
        if (block_norm(m, spec, vi, vj) >= zero_tol)
          throw std::invalid_argument("classify_blocks: nonzero lower block at i=" +
                                      std::to_string(i));
      Eigen::MatrixXd diag = m.block(spec.block_start[vi], spec.block_start[vi],
                                     spec.block_size[vi], spec.block_size[vi]);
      if ((diag - Eigen::MatrixXd::Identity(diag.rows(), diag.cols())).norm() >= zero_tol)
        throw std::invalid_argument("classify_blocks: diagonal block not identity at i=" +
                                    std::to_string(i));
    }
    samples.push_back(std::move(m));
  }

  for (int vi = 0; vi < nv; ++vi)
    for (int vj = vi + 1; vj < nv; ++vj) {
      BlockPattern::Entry e;
      e.xi = vi;
      e.zeta = vj;
      std::vector<double> norms;
      for (const auto& m : samples) norms.push_back(block_norm(m, spec, vi, vj));
      e.first_norm = norms.front();
      e.last_norm = norms.back();
      bool all_zero = true;
      for (double n : norms)
        if (n >= zero_tol) all_zero = false;
      double ratio = e.first_norm < zero_tol
                         ? std::numeric_limits<double>::infinity()
                         : e.last_norm / e.first_norm;
      if (all_zero) {
        e.label = BlockLabel::Zero;
      } else if (ratio > diverge_factor && e.last_norm > 1.0 / zero_tol) {
        e.label = BlockLabel::Divergent;
      } else {
        e.label = BlockLabel::Ambiguous;
      }
      if (e.first_norm > 0 && e.last_norm > 0 &&
          sample_indices.back() > sample_indices.front())
        e.growth_exponent = std::log(e.last_norm / e.first_norm) /
                            std::log(sample_indices.back() / sample_indices.front());
      pat.entries.push_back(e);
    }
  return pat;
}

DivergenceGraph build_graph(const BlockPattern& pattern) {
  DivergenceGraph g;
  g.vertex_names = pattern.vertex_names;
  for (const auto& e : pattern.entries) {
    if (e.label == BlockLabel::Ambiguous)
      throw std::runtime_error(
          "build_graph: ambiguous block (" + pattern.vertex_names[e.xi] + "," +
          pattern.vertex_names[e.zeta] +
          "): normalize the sequence by a bounded left modification first");
    if (e.label == BlockLabel::Divergent) g.edges.emplace_back(e.xi, e.zeta);
  }
  return g;
}

DivergenceGraph make_graph(int vertices, const std::vector<std::pair<int, int>>& edges) {
  DivergenceGraph g;
  for (int v = 0; v < vertices; ++v) g.vertex_names.push_back(std::to_string(v + 1));
  for (auto [i, j] : edges) {
    if (i == j || i < 0 || j < 0 || i >= vertices || j >= vertices)
      throw std::invalid_argument("make_graph: bad edge");
    if (i > j) std::swap(i, j);
    g.edges.emplace_back(i, j);
  }
  return g;
}

bool is_connected(const DivergenceGraph& g) {
  int n = g.size();
  if (n == 0) return true;
  std::vector<int> stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges) {
      int other = -1;
      if (e.first == v) other = e.second;
      if (e.second == v) other = e.first;
      if (other >= 0 && !seen[other]) {
        seen[other] = true;
        ++visited;
        stack.push_back(other);
      }
    }
  }
  return visited == n;
}

UdsSets enumerate_uds(const DivergenceGraph& g) {
  int n = g.size();
  if (n > 20) throw std::invalid_argument("enumerate_uds: more than 20 vertices");
  UdsSets out;
  std::uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    bool ok = true;
    for (const auto& e : g.edges) {
      // e.first < e.second in the vertex order
      if ((mask >> e.second & 1u) && !(mask >> e.first & 1u)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    out.all.push_back(mask);
    if (mask != 0 && mask != full) out.proper.push_back(mask);
    if (full == 0) break;
  }
  return out;
}

WeightSolution uds_weights(const DivergenceGraph& g) {
  int n = g.size();
  UdsSets uds = enumerate_uds(g);
  WeightSolution sol;
  if (n == 1) {
    sol.feasible = true;
    sol.x_exact = VecQ(1, BigRational(0));
    sol.x = {0.0};
    sol.min_proper_sum = 0.0;
    sol.audit_ok = true;
    return sol;
  }
  LpProblem lp;
  lp.Aeq.assign(1, VecQ(n, BigRational(1)));
  lp.beq.assign(1, BigRational(0));
  for (std::uint32_t mask : uds.proper) {
    VecQ row(n, BigRational(0));
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) row[v] = 1;
    lp.Age.push_back(std::move(row));
    lp.bge.push_back(BigRational(1));
  }
  lp.c.assign(n, BigRational(0));
  LpResult res = lp_solve(lp);
  if (res.status != LpResult::Status::Optimal) return sol;
  sol.feasible = true;
  sol.x_exact = res.x;
  for (int v = 0; v < n; ++v) sol.x.push_back(rat_to_double(res.x[v]));
  // post-hoc audit against the enumerated subsets
  BigRational total(0);
  for (const auto& xi : res.x) total += xi;
  bool first = true;
  BigRational minsum(0);
  for (std::uint32_t mask : uds.proper) {
    BigRational s(0);
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) s += res.x[v];
    if (first || s < minsum) minsum = s;
    first = false;
  }
  sol.min_proper_sum = uds.proper.empty() ? 0.0 : rat_to_double(minsum);
  sol.audit_ok = total == 0 && (uds.proper.empty() || minsum >= 1);
  return sol;
}

ActionReport weight_vector_action(const TorusSpec& spec, const UnipotentSampler& u,
                                  const WeightVector& w,
                                  const std::vector<double>& sample_indices,
                                  double zero_tol) {
  if (sample_indices.empty())
    throw std::invalid_argument("weight_vector_action: no sample indices");
  int grade = static_cast<int>(w.index_set.size());
  auto subs = subsets_of_grade(spec.N, grade);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(static_cast<int>(subs.size()));
  target[subset_rank(w.index_set, spec.N)] = 1.0;

  ActionReport rep;
  double max_dev = 0.0, final_norm = 0.0;
  for (double i : sample_indices) {
    Eigen::MatrixXd m = u(i);
    Eigen::MatrixXd cols(spec.N, grade);
    for (int k = 0; k < grade; ++k) cols.col(k) = m.col(w.index_set[k]);
    Eigen::VectorXd img = wedge_coords(cols);
    max_dev = std::max(max_dev, (img - target).cwiseAbs().maxCoeff());
    final_norm = img.norm();
  }
  rep.max_deviation = max_dev;
  rep.final_norm = final_norm;
  if (max_dev <= 1e-9) {
    rep.result = ActionReport::Result::ConstantEqual;
    return rep;
  }
  if (final_norm > 1.0 / zero_tol) {
    rep.result = ActionReport::Result::Divergent;
    return rep;
  }
  throw std::runtime_error(
      "weight_vector_action: orbit of " + w.name +
      " is moving but not divergent; the sequence needs normalization");
}

ParabolicParts parabolic_decompose(const TorusSpec& spec, const Eigen::MatrixXd& g) {
  if (g.rows() != spec.N || g.cols() != spec.N)
    throw std::invalid_argument("parabolic_decompose: shape");
  if (std::abs(g.determinant() - 1.0) > 1e-6)
    throw std::invalid_argument("parabolic_decompose: det must be 1");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  double cond = svd.singularValues()(0) / svd.singularValues()(spec.N - 1);
  if (!(cond < 1e12))
    throw std::runtime_error("parabolic_decompose: ill-conditioned input, cond = " +
                             std::to_string(cond));

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < spec.N; ++k)
    if (R(k, k) < 0) {
      R.row(k) = -R.row(k);
      Q.col(k) = -Q.col(k);
    }

  int nv = spec.num_vertices();
  ParabolicParts out;
  out.condition = cond;
  out.delta = Q;
  out.t.resize(nv);
  Eigen::MatrixXd hexp = Eigen::MatrixXd::Zero(spec.N, spec.N);
  out.h = Eigen::MatrixXd::Identity(spec.N, spec.N);
  for (int v = 0; v < nv; ++v) {
    int s = spec.block_start[v], l = spec.block_size[v];
    Eigen::MatrixXd D = R.block(s, s, l, l);
    double logdet = 0;
    for (int k = 0; k < l; ++k) logdet += std::log(D(k, k));
    out.t[v] = logdet / l;
    out.h.block(s, s, l, l) = D * std::exp(-out.t[v]);
    hexp.block(s, s, l, l) = D;
  }
  out.u = R * hexp.inverse();
  // rebuild and measure
  Eigen::MatrixXd expt = Eigen::MatrixXd::Zero(spec.N, spec.N);
  for (int v = 0; v < nv; ++v) {
    int s = spec.block_start[v], l = spec.block_size[v];
    expt.block(s, s, l, l) = std::exp(out.t[v]) * Eigen::MatrixXd::Identity(l, l);
  }
  out.residual = (out.delta * out.u * out.h * expt - g).cwiseAbs().maxCoeff();
  if (out.residual > 1e-9)
    throw std::runtime_error("parabolic_decompose: residual " + std::to_string(out.residual));
  return out;
}

}  // namespace tlab
