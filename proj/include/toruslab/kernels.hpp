#pragma once

#include <cstddef>
#include <cstdint>

namespace tlab::kernels {

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant selected at runtime. Both accumulate in identical order (no
// FMA, lane = point), so results are bitwise equal; the equivalence suite
// asserts exact agreement.

// Points in structure-of-arrays layout: coords[d] points at npts values of
// coordinate d. Counts points satisfying A x >= b for every row of A
// (row-major, nrows x dim).
std::size_t count_inside(const double* const* coords, std::size_t npts,
                         const double* A, const double* b, std::size_t nrows,
                         std::size_t dim);

// Scans x(c) = base + c*step over integer c in [c0, c1); returns how many
// satisfy ||x||^2 <= r2, the minimal ||x||^2 over nonzero... (caller filters
// c=0 beforehand if needed), and the first c attaining the minimum.
struct LineScan {
  std::size_t count = 0;
  double min_norm2 = 0;
  std::int64_t argmin = 0;
  bool has_min = false;
};
LineScan line_scan(const double* base, const double* step, std::size_t dim,
                   std::int64_t c0, std::int64_t c1, double r2);

// Active implementation name: "avx2" or "scalar".
const char* active();

// Force the scalar path (tests and the --no-simd escape hatch).
void force_scalar(bool on);

}  // namespace tlab::kernels
