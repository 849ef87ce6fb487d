// Compiled with -mavx2 -ffp-contract=off; see CMakeLists.txt.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "cliff/kernels/spinor_kernels.hpp"

namespace cliff::kernels::avx2 {

void matrix_axpy(std::size_t n, const PlanarMatrix4& k, const SpinorRowConst& a,
                 const SpinorRowConst* b, const SpinorRow& out) {
  constexpr std::size_t kLanes = 4;
  const std::size_t body = n - n % kLanes;

  __m256d kr[16], ki[16];
  for (int e = 0; e < 16; ++e) {
    kr[e] = _mm256_set1_pd(k.re[e]);
    ki[e] = _mm256_set1_pd(k.im[e]);
  }

  for (std::size_t i = 0; i < body; i += kLanes) {
    __m256d dr[4], di[4];
    for (int d = 0; d < 4; ++d) {
      dr[d] = _mm256_loadu_pd(a.re[d] + i);
      di[d] = _mm256_loadu_pd(a.im[d] + i);
      if (b) {
        dr[d] = _mm256_sub_pd(dr[d], _mm256_loadu_pd(b->re[d] + i));
        di[d] = _mm256_sub_pd(di[d], _mm256_loadu_pd(b->im[d] + i));
      }
    }
    for (int c = 0; c < 4; ++c) {
      __m256d acc_re = _mm256_loadu_pd(out.re[c] + i);
      __m256d acc_im = _mm256_loadu_pd(out.im[c] + i);
      for (int d = 0; d < 4; ++d) {
        const int e = 4 * c + d;
        acc_re = _mm256_add_pd(
            acc_re, _mm256_sub_pd(_mm256_mul_pd(kr[e], dr[d]), _mm256_mul_pd(ki[e], di[d])));
        acc_im = _mm256_add_pd(
            acc_im, _mm256_add_pd(_mm256_mul_pd(kr[e], di[d]), _mm256_mul_pd(ki[e], dr[d])));
      }
      _mm256_storeu_pd(out.re[c] + i, acc_re);
      _mm256_storeu_pd(out.im[c] + i, acc_im);
    }
  }

  if (body < n) {
    SpinorRowConst a_tail, b_tail;
    SpinorRow out_tail;
    for (int d = 0; d < 4; ++d) {
      a_tail.re[d] = a.re[d] + body;
      a_tail.im[d] = a.im[d] + body;
      if (b) {
        b_tail.re[d] = b->re[d] + body;
        b_tail.im[d] = b->im[d] + body;
      }
      out_tail.re[d] = out.re[d] + body;
      out_tail.im[d] = out.im[d] + body;
    }
    scalar::matrix_axpy(n - body, k, a_tail, b ? &b_tail : nullptr, out_tail);
  }
}

double max_abs_diff(std::size_t n, const double* x_re, const double* x_im,
                    const double* y_re, const double* y_im) {
  constexpr std::size_t kLanes = 4;
  const std::size_t body = n - n % kLanes;
  __m256d worst = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(x_re + i), _mm256_loadu_pd(y_re + i));
    const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(x_im + i), _mm256_loadu_pd(y_im + i));
    worst = _mm256_max_pd(worst, _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di)));
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, worst);
  double w = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (std::size_t i = body; i < n; ++i) {
    const double dr = x_re[i] - y_re[i];
    const double di = x_im[i] - y_im[i];
    w = std::max(w, dr * dr + di * di);
  }
  return std::sqrt(w);
}

}  // namespace cliff::kernels::avx2
