#include "kernels_impl.hpp"

#include <cstdlib>
#include <cstring>

namespace curvlab::kernels {

namespace {

constexpr KernelTable kScalar{
    "scalar",
    &scalar::project,
    &scalar::max_abs,
    &scalar::count_extrema,
    &scalar::count_sign_changes,
    &scalar::max_pairwise_dist2,
};

#if defined(CURVLAB_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    &avx2::project,
    &avx2::max_abs,
    &avx2::count_extrema,
    &avx2::count_sign_changes,
    &avx2::max_pairwise_dist2,
};
#endif

bool cpu_has_avx2() {
#if defined(CURVLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(CURVLAB_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* table = [] {
    const char* env = std::getenv("CURVLAB_KERNELS");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
    const KernelTable* fast = avx2_kernels();
    return fast != nullptr ? fast : &kScalar;
  }();
  return *table;
}

}  // namespace curvlab::kernels
