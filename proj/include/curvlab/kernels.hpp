#pragma once

// Data-parallel inner loops shared by the estimators. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant chosen at
// runtime. Variants evaluate the same operations in the same order without
// fused multiply-add, so their results are bitwise identical.

#include <cstddef>

namespace curvlab::kernels {

/// Returned by the counting kernels when a tie or zero falls inside the
/// tolerance band.
inline constexpr int kDegenerate = -1;

struct KernelTable {
  const char* name;

  /// out[i] = sum_d dir[d] * (coords[d * stride + i] - origin[d]), i < n.
  void (*project)(const double* coords, std::size_t stride, std::size_t dim, std::size_t n,
                  const double* dir, const double* origin, double* out);

  /// max_i |f[i]|.
  double (*max_abs)(const double* f, std::size_t n);

  /// Number of strict local extrema of the sequence f. Cyclic sequences wrap;
  /// open sequences count both endpoints. kDegenerate if any pair of adjacent
  /// values differs by at most tie_tol.
  int (*count_extrema)(const double* f, std::size_t n, bool cyclic, double tie_tol);

  /// Number of sign changes between consecutive entries (wrapping when
  /// cyclic). kDegenerate if any |f[i]| <= zero_tol.
  int (*count_sign_changes)(const double* f, std::size_t n, bool cyclic, double zero_tol);

  /// max_{i<j} sum_d (x[d][i] - x[d][j])^2.
  double (*max_pairwise_dist2)(const double* coords, std::size_t stride, std::size_t dim,
                               std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr unless the binary was built with the AVX2 variant and the CPU
/// reports AVX2 support.
const KernelTable* avx2_kernels();

/// The table used by the library: AVX2 when available, scalar otherwise.
/// Setting CURVLAB_KERNELS=scalar in the environment forces the reference
/// kernels.
const KernelTable& active_kernels();

}  // namespace curvlab::kernels
