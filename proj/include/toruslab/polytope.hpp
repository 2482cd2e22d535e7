#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "toruslab/resscalars.hpp"
#include "toruslab/torus.hpp"

namespace tlab {

// Halfspace form A u >= b in the orthonormal chart of the split trace-zero
// subspace. Volumes in this chart agree with Hausdorff measure of the
// embedded subspace, so they are chart-independent.
struct HPolytope {
  int dim = 0;
  Eigen::MatrixXd A;               // one row per constraint
  Eigen::VectorXd b;
  std::vector<std::string> labels; // weight-vector names
  Eigen::MatrixXd chart;           // block-coordinate chart the rows live over
};

struct PolytopeStats {
  double volume = 0.0;
  double std_error = 0.0;          // 0 for the exact method
  double cheb_radius = 0.0;
  int vertex_count = 0;
  bool bounded = false;
  bool empty = true;
  std::string method;
};

enum class VolumeMethod { Auto, Exact, MonteCarlo };

struct VolumeOptions {
  VolumeMethod method = VolumeMethod::Auto;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 1;
};

HPolytope build_omega(const TorusSpec& spec, const Eigen::MatrixXd& B, double eps);

// Restriction-of-scalars polytope: one matrix per archimedean place of the
// field (real places first). Degenerates to build_omega when the field is Q.
HPolytope build_omega_prime(const TorusSpec& spec, const GeometricEmbedding& emb,
                            const std::vector<Eigen::MatrixXcd>& B_places, double eps);

struct BoundednessReport {
  bool feasible = false;
  bool bounded = false;
  Eigen::VectorXd direction;  // a recession direction when unbounded
};
BoundednessReport boundedness(const HPolytope& P);

std::vector<Eigen::VectorXd> enumerate_vertices(const HPolytope& P);

// Exact (triangulated vertex enumeration) for dim <= 3, Monte Carlo rejection
// in the LP bounding box for dim <= 8. Throws on unbounded input.
PolytopeStats volume(const HPolytope& P, const VolumeOptions& opt = {});

struct ChebyshevResult {
  double radius = 0.0;   // negative optimum means empty
  bool empty = false;
  bool unbounded = false;
  Eigen::VectorXd center;
};
ChebyshevResult inscribed_radius(const HPolytope& P);

struct ShrinkRow {
  double i = 0.0;
  double vol = 0.0;
  double vol_shrunk = 0.0;
  double ratio = 0.0;
  double cheb_radius = 0.0;
};

// Vol(Omega_{B_i, eps+omega_i}) / Vol(Omega_{B_i, eps}) per i.
std::vector<ShrinkRow> shrink_ratio_series(
    const TorusSpec& spec, const std::vector<double>& is,
    const std::function<Eigen::MatrixXd(double)>& B_of_i, double eps,
    const std::function<double(double)>& omega_of_i, const VolumeOptions& opt = {});

// LP check that Q contains P (every point of P satisfies Q's constraints).
bool polytope_contained(const HPolytope& P, const HPolytope& Q, double tol = 1e-9);

}  // namespace tlab
