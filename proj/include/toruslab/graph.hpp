#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "toruslab/matq.hpp"
#include "toruslab/torus.hpp"

namespace tlab {

enum class BlockLabel { Divergent, Zero, Ambiguous };

// Classification of the off-diagonal blocks of a unipotent sequence u_i with
// respect to the vertex order 1 < ... < l0 < [l_1] < ... < [l_a0].
struct BlockPattern {
  struct Entry {
    int xi = 0, zeta = 0;  // ordered vertex pair, xi < zeta
    BlockLabel label = BlockLabel::Zero;
    double growth_exponent = 0.0;  // log-log slope estimate
    double first_norm = 0.0, last_norm = 0.0;
  };
  std::vector<std::string> vertex_names;
  std::vector<Entry> entries;  // all pairs xi < zeta; lower pairs are Zero by shape
  const Entry& at(int xi, int zeta) const;
};

struct DivergenceGraph {
  std::vector<std::string> vertex_names;
  std::vector<std::pair<int, int>> edges;  // 0-based, first < second
  int size() const { return static_cast<int>(vertex_names.size()); }
  bool has_edge(int i, int j) const;
};

using UnipotentSampler = std::function<Eigen::MatrixXd(double)>;

BlockPattern classify_blocks(const TorusSpec& spec, const UnipotentSampler& u,
                             const std::vector<double>& sample_indices,
                             double zero_tol = 1e-8, double diverge_factor = 1e3);

// Fails on Ambiguous labels: the sequence then needs the bounded left
// modification described alongside the block decomposition, which is the
// caller's job.
DivergenceGraph build_graph(const BlockPattern& pattern);

DivergenceGraph make_graph(int vertices, const std::vector<std::pair<int, int>>& edges);

bool is_connected(const DivergenceGraph& g);

// All up-closed-under-edge-order subsets: j in J and {i,j} an edge with i < j
// forces i in J. Bitmask per subset, bit v = vertex v.
struct UdsSets {
  std::vector<std::uint32_t> all;
  std::vector<std::uint32_t> proper;  // nonempty, not the full vertex set
};
UdsSets enumerate_uds(const DivergenceGraph& g);

// Weights with sum 0 and sum >= 1 over every proper nonempty UDS subset.
// Infeasibility of this LP certifies a disconnected graph.
struct WeightSolution {
  bool feasible = false;
  VecQ x_exact;
  std::vector<double> x;
  double min_proper_sum = 0.0;  // audit: smallest UDS sum, >= 1 when feasible
  bool audit_ok = false;
};
WeightSolution uds_weights(const DivergenceGraph& g);

// Behaviour of u_i on the weight vector e_I: either fixed pointwise or
// norm-divergent. A bounded-but-moving observation throws.
struct ActionReport {
  enum class Result { ConstantEqual, Divergent };
  Result result = Result::ConstantEqual;
  double max_deviation = 0.0;
  double final_norm = 0.0;
};
ActionReport weight_vector_action(const TorusSpec& spec, const UnipotentSampler& u,
                                  const WeightVector& w,
                                  const std::vector<double>& sample_indices,
                                  double zero_tol = 1e-8);

// g = delta * u * h * exp(t): orthogonal, block-unipotent, block-diagonal
// unit-determinant, split exponential. QR-based.
struct ParabolicParts {
  Eigen::MatrixXd delta, u, h;
  Eigen::VectorXd t;  // block coordinates, length l0 + a0
  double residual = 0.0;
  double condition = 0.0;
};
ParabolicParts parabolic_decompose(const TorusSpec& spec, const Eigen::MatrixXd& g);

}  // namespace tlab
