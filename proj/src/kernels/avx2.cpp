// Compiled with -mavx2 (and without -mfma) only; never call these directly,
// go through avx2_kernels().

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace curvlab::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d x) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, x);
}

inline int popcount_mask(__m256d m) {
  return std::popcount(static_cast<unsigned>(_mm256_movemask_pd(m)));
}

}  // namespace

void project(const double* coords, std::size_t stride, std::size_t dim, std::size_t n,
             const double* dir, const double* origin, double* out) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) _mm256_storeu_pd(out + i, zero);
  for (std::size_t i = n4; i < n; ++i) out[i] = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double* row = coords + d * stride;
    const __m256d v = _mm256_set1_pd(dir[d]);
    const __m256d o = _mm256_set1_pd(origin[d]);
    for (std::size_t i = 0; i < n4; i += 4) {
      const __m256d x = _mm256_sub_pd(_mm256_loadu_pd(row + i), o);
      const __m256d acc = _mm256_loadu_pd(out + i);
      _mm256_storeu_pd(out + i, _mm256_add_pd(acc, _mm256_mul_pd(v, x)));
    }
    for (std::size_t i = n4; i < n; ++i) out[i] = out[i] + dir[d] * (row[i] - origin[d]);
  }
}

double max_abs(const double* f, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  __m256d m = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(f + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double best = 0.0;
  for (double x : lanes) best = x > best ? x : best;
  for (std::size_t i = n4; i < n; ++i) {
    const double a = std::fabs(f[i]);
    if (a > best) best = a;
  }
  return best;
}

int count_extrema(const double* f, std::size_t n, bool cyclic, double tie_tol) {
  if (n < 4) return scalar::count_extrema(f, n, cyclic, tie_tol);
  const __m256d tol = _mm256_set1_pd(tie_tol);
  const __m256d zero = _mm256_setzero_pd();

  // Ties on edges (i, i + 1), i in [0, n - 2].
  std::size_t i = 0;
  for (; i + 4 <= n - 1; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(f + i + 1), _mm256_loadu_pd(f + i));
    if (_mm256_movemask_pd(_mm256_cmp_pd(abs_pd(d), tol, _CMP_LE_OQ)) != 0) return kDegenerate;
  }
  for (; i < n - 1; ++i) {
    if (std::fabs(f[i + 1] - f[i]) <= tie_tol) return kDegenerate;
  }
  if (cyclic && std::fabs(f[0] - f[n - 1]) <= tie_tol) return kDegenerate;

  // Interior vertices i in [1, n - 2].
  int count = 0;
  i = 1;
  for (; i + 4 <= n - 1; i += 4) {
    const __m256d fm = _mm256_loadu_pd(f + i - 1);
    const __m256d f0 = _mm256_loadu_pd(f + i);
    const __m256d fp = _mm256_loadu_pd(f + i + 1);
    const __m256d up0 = _mm256_cmp_pd(_mm256_sub_pd(f0, fm), zero, _CMP_GT_OQ);
    const __m256d up1 = _mm256_cmp_pd(_mm256_sub_pd(fp, f0), zero, _CMP_GT_OQ);
    count += popcount_mask(_mm256_xor_pd(up0, up1));
  }
  for (; i + 1 < n; ++i) {
    const double d0 = f[i] - f[i - 1];
    const double d1 = f[i + 1] - f[i];
    count += (d0 > 0.0) != (d1 > 0.0);
  }
  if (cyclic) {
    const double a0 = f[0] - f[n - 1];
    const double a1 = f[1] - f[0];
    count += (a0 > 0.0) != (a1 > 0.0);
    const double b0 = f[n - 1] - f[n - 2];
    const double b1 = f[0] - f[n - 1];
    count += (b0 > 0.0) != (b1 > 0.0);
  } else {
    count += 2;
  }
  return count;
}

int count_sign_changes(const double* f, std::size_t n, bool cyclic, double zero_tol) {
  const __m256d tol = _mm256_set1_pd(zero_tol);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(f + i);
    if (_mm256_movemask_pd(_mm256_cmp_pd(abs_pd(x), tol, _CMP_LE_OQ)) != 0) return kDegenerate;
  }
  for (; i < n; ++i) {
    if (std::fabs(f[i]) <= zero_tol) return kDegenerate;
  }
  int count = 0;
  i = 0;
  for (; i + 4 < n; i += 4) {
    const __m256d a = _mm256_cmp_pd(_mm256_loadu_pd(f + i), zero, _CMP_GT_OQ);
    const __m256d b = _mm256_cmp_pd(_mm256_loadu_pd(f + i + 1), zero, _CMP_GT_OQ);
    count += popcount_mask(_mm256_xor_pd(a, b));
  }
  for (; i + 1 < n; ++i) count += (f[i] > 0.0) != (f[i + 1] > 0.0);
  if (cyclic && n > 1) count += (f[n - 1] > 0.0) != (f[0] > 0.0);
  return count;
}

double max_pairwise_dist2(const double* coords, std::size_t stride, std::size_t dim,
                          std::size_t n) {
  double best = 0.0;
  __m256d vbest = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      __m256d s = _mm256_setzero_pd();
      for (std::size_t d = 0; d < dim; ++d) {
        const __m256d xi = _mm256_set1_pd(coords[d * stride + i]);
        const __m256d diff = _mm256_sub_pd(xi, _mm256_loadu_pd(coords + d * stride + j));
        s = _mm256_add_pd(s, _mm256_mul_pd(diff, diff));
      }
      vbest = _mm256_max_pd(vbest, s);
    }
    for (; j < n; ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = coords[d * stride + i] - coords[d * stride + j];
        s = s + diff * diff;
      }
      if (s > best) best = s;
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vbest);
  for (double x : lanes) best = x > best ? x : best;
  return best;
}

}  // namespace curvlab::kernels::avx2
