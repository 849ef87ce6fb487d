#include <atomic>
#include <cstdlib>
#include <string>

#include "cliff/errors.hpp"
#include "cliff/kernels/spinor_kernels.hpp"

namespace cliff::kernels {

namespace {

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{default_backend()};
  return slot;
}

}  // namespace

std::string_view to_string(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_supported() {
#if defined(CLIFF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return ok;
#else
  return false;
#endif
}

Backend default_backend() {
  if (const char* env = std::getenv("CLIFF_KERNELS"); env && std::string(env) == "scalar") {
    return Backend::scalar;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) {
    throw InvalidInput("AVX2 kernels are not available on this machine");
  }
  backend_slot().store(b, std::memory_order_relaxed);
}

void matrix_axpy(std::size_t n, const PlanarMatrix4& k, const SpinorRowConst& a,
                 const SpinorRowConst* b, const SpinorRow& out) {
#if defined(CLIFF_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::matrix_axpy(n, k, a, b, out);
#endif
  scalar::matrix_axpy(n, k, a, b, out);
}

double max_abs_diff(std::size_t n, const double* x_re, const double* x_im,
                    const double* y_re, const double* y_im) {
#if defined(CLIFF_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::max_abs_diff(n, x_re, x_im, y_re, y_im);
#endif
  return scalar::max_abs_diff(n, x_re, x_im, y_re, y_im);
}

}  // namespace cliff::kernels
