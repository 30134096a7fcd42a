#pragma once

#include "curvlab/kernels.hpp"

#include <cstddef>

namespace curvlab::kernels {

namespace scalar {
void project(const double* coords, std::size_t stride, std::size_t dim, std::size_t n,
             const double* dir, const double* origin, double* out);
double max_abs(const double* f, std::size_t n);
int count_extrema(const double* f, std::size_t n, bool cyclic, double tie_tol);
int count_sign_changes(const double* f, std::size_t n, bool cyclic, double zero_tol);
double max_pairwise_dist2(const double* coords, std::size_t stride, std::size_t dim,
                          std::size_t n);
}  // namespace scalar

#if defined(CURVLAB_HAVE_AVX2)
namespace avx2 {
void project(const double* coords, std::size_t stride, std::size_t dim, std::size_t n,
             const double* dir, const double* origin, double* out);
double max_abs(const double* f, std::size_t n);
int count_extrema(const double* f, std::size_t n, bool cyclic, double tie_tol);
int count_sign_changes(const double* f, std::size_t n, bool cyclic, double zero_tol);
double max_pairwise_dist2(const double* coords, std::size_t stride, std::size_t dim,
                          std::size_t n);
}  // namespace avx2
#endif

}  // namespace curvlab::kernels
