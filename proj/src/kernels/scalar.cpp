#include "kernels_impl.hpp"

#include <cmath>

namespace curvlab::kernels::scalar {

void project(const double* coords, std::size_t stride, std::size_t dim, std::size_t n,
             const double* dir, const double* origin, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double* row = coords + d * stride;
    const double v = dir[d];
    const double o = origin[d];
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + v * (row[i] - o);
  }
}

double max_abs(const double* f, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(f[i]);
    if (a > m) m = a;
  }
  return m;
}

int count_extrema(const double* f, std::size_t n, bool cyclic, double tie_tol) {
  if (n < 2) return kDegenerate;
  const std::size_t edges = cyclic ? n : n - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    const double d = f[i + 1 == n ? 0 : i + 1] - f[i];
    if (std::fabs(d) <= tie_tol) return kDegenerate;
  }
  int count = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(f[i]) <= zero_tol) return kDegenerate;
  }
  int count = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) count += (f[i] > 0.0) != (f[i + 1] > 0.0);
  if (cyclic && n > 1) count += (f[n - 1] > 0.0) != (f[0] > 0.0);
  return count;
}

double max_pairwise_dist2(const double* coords, std::size_t stride, std::size_t dim,
                          std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = coords[d * stride + i] - coords[d * stride + j];
        s = s + diff * diff;
      }
      if (s > best) best = s;
    }
  }
  return best;
}

}  // namespace curvlab::kernels::scalar
