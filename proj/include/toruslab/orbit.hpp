#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "toruslab/lattice.hpp"
#include "toruslab/matq.hpp"
#include "toruslab/polytope.hpp"
#include "toruslab/torus.hpp"

namespace tlab {

struct OrbitSample {
  TorusSpec spec;
  Eigen::MatrixXd g;
  std::vector<LieParam> params;
  std::vector<LatticeBasis> lattices;  // g * exp(t) * Z^N
  std::uint64_t seed = 0;
};

// t uniform in the box; every basis audited for |det - 1| < 1e-8.
OrbitSample sample_orbit(const TorusSpec& spec, const Eigen::MatrixXd& g,
                         const LieBox& box, int n, std::uint64_t seed);

// Split coordinate uniform in the polytope (rejection from its vertex box),
// anisotropic coordinates from the usual box.
OrbitSample sample_orbit_region(const TorusSpec& spec, const Eigen::MatrixXd& g,
                                const HPolytope& region,
                                const std::vector<std::vector<std::pair<double, double>>>& aniso_box,
                                int n, std::uint64_t seed);

struct SurveyResult {
  double fraction = 0.0;
  double std_error = 0.0;
  int below = 0;
  int n = 0;
};
SurveyResult systole_survey(const OrbitSample& sample, double eps);

struct SiegelResult {
  double mean = 0.0;
  double std_error = 0.0;
  double ball_volume = 0.0;
};
SiegelResult siegel_statistic(const OrbitSample& sample, double r);

double ball_volume(int dim, double r);

// Directions of Lie(T(R)) whose Ad(g_i) image stays bounded, found from the
// singular values of the stacked Ad maps; growth read off by log-log slopes.
struct SubalgebraReport {
  std::vector<Eigen::MatrixXd> lie_basis;      // basis used for Lie(T(R))
  std::vector<double> exponents;               // per singular direction, descending
  std::vector<Eigen::MatrixXd> bounded_basis;  // span with exponent < tol
  int dimension = 0;
};
using TranslatorSampler = std::function<Eigen::MatrixXd(double)>;
SubalgebraReport bounded_subalgebra(const TorusSpec& spec, const TranslatorSampler& g,
                                    const std::vector<double>& sample_indices,
                                    double growth_tol = 0.1);

std::vector<Eigen::MatrixXd> lie_algebra_basis(const TorusSpec& spec);

// Exact basis of {X : XA = AX for all generators} with tr X = 0.
std::vector<MatQ> centralizer_algebra(const std::vector<MatQ>& generators);

// Double-commutant test: the center of the centralizer of S0 equals the span
// of S0's own trace-free Lie data.
bool center_check(const std::vector<MatQ>& s0_generators);

struct ExampleReport {
  std::string name;
  std::vector<std::string> checks;       // human-readable per-check lines
  std::vector<double> growth_exponents;  // divergence rates of conjugated s
  bool exact_commutation = false;        // ex3: g_i s g_i^{-1} == s exactly
  int bounded_dim = -1;
  int centralizer_dim = -1;              // ex3
  bool center_ok = false;                // ex3
  bool ok = false;
};
ExampleReport example_suite(const std::string& name, double imax = 1e6);

}  // namespace tlab
