#pragma once

// Row kernels for four-component complex fields stored as separate real and
// imaginary planes (structure of arrays). A scalar reference implementation is
// always built; an AVX2 variant is compiled when the toolchain allows it and
// selected at runtime when the CPU supports it. Both variants perform the same
// floating-point operations in the same order and therefore agree bitwise.

#include <array>
#include <cstddef>
#include <string_view>

namespace cliff::kernels {

/// 4x4 complex matrix, row-major, split into real and imaginary planes.
struct PlanarMatrix4 {
  std::array<double, 16> re{};
  std::array<double, 16> im{};
};

struct SpinorRowConst {
  std::array<const double*, 4> re{};
  std::array<const double*, 4> im{};
};

struct SpinorRow {
  std::array<double*, 4> re{};
  std::array<double*, 4> im{};
};

/// out += K * (a - b) over n sites; with b == nullptr, out += K * a.
using MatrixAxpyFn = void (*)(std::size_t n, const PlanarMatrix4& k,
                              const SpinorRowConst& a, const SpinorRowConst* b,
                              const SpinorRow& out);

/// max_i |x_i - y_i| for complex planes (x_re + i x_im) and (y_re + i y_im).
using MaxAbsDiffFn = double (*)(std::size_t n, const double* x_re,
                                const double* x_im, const double* y_re,
                                const double* y_im);

namespace scalar {
void matrix_axpy(std::size_t n, const PlanarMatrix4& k, const SpinorRowConst& a,
                 const SpinorRowConst* b, const SpinorRow& out);
double max_abs_diff(std::size_t n, const double* x_re, const double* x_im,
                    const double* y_re, const double* y_im);
}  // namespace scalar

#if defined(CLIFF_HAVE_AVX2)
namespace avx2 {
void matrix_axpy(std::size_t n, const PlanarMatrix4& k, const SpinorRowConst& a,
                 const SpinorRowConst* b, const SpinorRow& out);
double max_abs_diff(std::size_t n, const double* x_re, const double* x_im,
                    const double* y_re, const double* y_im);
}  // namespace avx2
#endif

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend b);

/// True when the AVX2 variant was compiled in and the CPU reports AVX2.
bool avx2_supported();

/// Best available backend, unless CLIFF_KERNELS=scalar is set in the environment.
Backend default_backend();

/// Backend used by the dispatching entry points below.
Backend active_backend();

/// Throws cliff::InvalidInput when the requested backend is unavailable.
void set_backend(Backend b);

void matrix_axpy(std::size_t n, const PlanarMatrix4& k, const SpinorRowConst& a,
                 const SpinorRowConst* b, const SpinorRow& out);
double max_abs_diff(std::size_t n, const double* x_re, const double* x_im,
                    const double* y_re, const double* y_im);

}  // namespace cliff::kernels
