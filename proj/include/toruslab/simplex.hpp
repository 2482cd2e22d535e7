#pragma once

#include <optional>

#include "toruslab/matq.hpp"

namespace tlab {

// Exact two-phase primal simplex (Bland's rule) over rationals.
// Problem form: maximize c.x subject to Aeq x = beq, Age x >= bge, x free.
struct LpProblem {
  MatQ Aeq; VecQ beq;
  MatQ Age; VecQ bge;
  VecQ c;
  size_t num_vars() const { return c.size(); }
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  BigRational value;
  VecQ x;
};

LpResult lp_solve(const LpProblem& p);

// Convenience: any feasible point of the constraint system, or nullopt.
std::optional<VecQ> lp_feasible_point(const MatQ& Aeq, const VecQ& beq,
                                      const MatQ& Age, const VecQ& bge,
                                      size_t nvars);

}  // namespace tlab
