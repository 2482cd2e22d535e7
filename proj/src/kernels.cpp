#include "toruslab/kernels.hpp"

#include <atomic>
#include <limits>

#if defined(__x86_64__) || defined(_M_X64)
#define TLAB_X86 1
#include <immintrin.h>
#else
#define TLAB_X86 0
#endif

namespace tlab::kernels {

namespace {

std::size_t count_inside_scalar(const double* const* coords, std::size_t npts,
                                const double* A, const double* b,
                                std::size_t nrows, std::size_t dim) {
  std::size_t count = 0;
  for (std::size_t p = 0; p < npts; ++p) {
    bool ok = true;
    for (std::size_t k = 0; k < nrows && ok; ++k) {
      double acc = 0.0;
      const double* row = A + k * dim;
      for (std::size_t d = 0; d < dim; ++d) acc = acc + row[d] * coords[d][p];
      ok = acc >= b[k];
    }
    if (ok) ++count;
  }
  return count;
}

LineScan line_scan_scalar(const double* base, const double* step,
                          std::size_t dim, std::int64_t c0, std::int64_t c1,
                          double r2) {
  LineScan out;
  out.min_norm2 = std::numeric_limits<double>::infinity();
  for (std::int64_t c = c0; c < c1; ++c) {
    double cd = static_cast<double>(c);
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double x = base[d] + cd * step[d];
      acc = acc + x * x;
    }
    if (acc <= r2) ++out.count;
    if (acc < out.min_norm2) {
      out.min_norm2 = acc;
      out.argmin = c;
      out.has_min = true;
    }
  }
  if (!out.has_min) out.min_norm2 = 0;
  return out;
}

#if TLAB_X86

__attribute__((target("avx2"))) std::size_t count_inside_avx2(
    const double* const* coords, std::size_t npts, const double* A,
    const double* b, std::size_t nrows, std::size_t dim) {
  std::size_t count = 0;
  std::size_t p = 0;
  for (; p + 4 <= npts; p += 4) {
    __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (std::size_t k = 0; k < nrows; ++k) {
      const double* row = A + k * dim;
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t d = 0; d < dim; ++d) {
        __m256d x = _mm256_loadu_pd(coords[d] + p);
        __m256d a = _mm256_set1_pd(row[d]);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(a, x));  // matches scalar order
      }
      __m256d ok = _mm256_cmp_pd(acc, _mm256_set1_pd(b[k]), _CMP_GE_OQ);
      all = _mm256_and_pd(all, ok);
      if (_mm256_movemask_pd(all) == 0) break;
    }
    count += __builtin_popcount(_mm256_movemask_pd(all));
  }
  // callers pass npts as a multiple of 4; the wrapper runs the scalar tail
  (void)p;
  return count;
}

__attribute__((target("avx2"))) LineScan line_scan_avx2(const double* base,
                                                        const double* step,
                                                        std::size_t dim,
                                                        std::int64_t c0,
                                                        std::int64_t c1,
                                                        double r2) {
  LineScan out;
  out.min_norm2 = std::numeric_limits<double>::infinity();
  std::int64_t c = c0;
  std::size_t count = 0;
  __m256d minv = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  alignas(32) double argv[4] = {0, 0, 0, 0};
  __m256d argvec = _mm256_setzero_pd();
  bool any = false;
  __m256d r2v = _mm256_set1_pd(r2);
  for (; c + 4 <= c1; c += 4) {
    __m256d cd = _mm256_set_pd(static_cast<double>(c + 3), static_cast<double>(c + 2),
                               static_cast<double>(c + 1), static_cast<double>(c));
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < dim; ++d) {
      __m256d x = _mm256_add_pd(_mm256_set1_pd(base[d]),
                                _mm256_mul_pd(cd, _mm256_set1_pd(step[d])));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
    }
    count += __builtin_popcount(
        _mm256_movemask_pd(_mm256_cmp_pd(acc, r2v, _CMP_LE_OQ)));
    __m256d less = _mm256_cmp_pd(acc, minv, _CMP_LT_OQ);
    if (_mm256_movemask_pd(less)) {
      minv = _mm256_blendv_pd(minv, acc, less);
      argvec = _mm256_blendv_pd(argvec, cd, less);
      any = true;
    }
  }
  if (any) {
    alignas(32) double mins[4];
    _mm256_store_pd(mins, minv);
    _mm256_store_pd(argv, argvec);
    for (int lane = 0; lane < 4; ++lane) {
      if (mins[lane] < out.min_norm2) {
        out.min_norm2 = mins[lane];
        out.argmin = static_cast<std::int64_t>(argv[lane]);
        out.has_min = true;
      } else if (mins[lane] == out.min_norm2 && out.has_min &&
                 static_cast<std::int64_t>(argv[lane]) < out.argmin) {
        out.argmin = static_cast<std::int64_t>(argv[lane]);
      }
    }
  }
  out.count = count;
  if (c < c1) {
    LineScan tail = line_scan_scalar(base, step, dim, c, c1, r2);
    out.count += tail.count;
    if (tail.has_min &&
        (!out.has_min || tail.min_norm2 < out.min_norm2)) {
      out.min_norm2 = tail.min_norm2;
      out.argmin = tail.argmin;
      out.has_min = true;
    }
  }
  if (!out.has_min) out.min_norm2 = 0;
  return out;
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

#else
bool cpu_has_avx2() { return false; }
#endif

std::atomic<bool> g_force_scalar{false};

bool use_avx2() { return !g_force_scalar.load(std::memory_order_relaxed) && cpu_has_avx2(); }

}  // namespace

std::size_t count_inside(const double* const* coords, std::size_t npts,
                         const double* A, const double* b, std::size_t nrows,
                         std::size_t dim) {
#if TLAB_X86
  if (use_avx2() && dim <= 64) {
    // main vector body plus scalar tail on the remainder
    std::size_t body = npts & ~static_cast<std::size_t>(3);
    std::size_t total = count_inside_avx2(coords, body, A, b, nrows, dim);
    if (body < npts) {
      const double* shifted[64];
      for (std::size_t d = 0; d < dim; ++d) shifted[d] = coords[d] + body;
      total += count_inside_scalar(shifted, npts - body, A, b, nrows, dim);
    }
    return total;
  }
#endif
  return count_inside_scalar(coords, npts, A, b, nrows, dim);
}

LineScan line_scan(const double* base, const double* step, std::size_t dim,
                   std::int64_t c0, std::int64_t c1, double r2) {
  if (c0 >= c1) return LineScan{};
#if TLAB_X86
  if (use_avx2()) return line_scan_avx2(base, step, dim, c0, c1, r2);
#endif
  return line_scan_scalar(base, step, dim, c0, c1, r2);
}

const char* active() { return use_avx2() ? "avx2" : "scalar"; }

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace tlab::kernels
