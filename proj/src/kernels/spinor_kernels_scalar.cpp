#include <algorithm>
#include <cmath>

#include "cliff/kernels/spinor_kernels.hpp"

namespace cliff::kernels::scalar {

void matrix_axpy(std::size_t n, const PlanarMatrix4& k, const SpinorRowConst& a,
                 const SpinorRowConst* b, const SpinorRow& out) {
  for (std::size_t i = 0; i < n; ++i) {
    double dr[4], di[4];
    for (int d = 0; d < 4; ++d) {
      dr[d] = b ? a.re[d][i] - b->re[d][i] : a.re[d][i];
      di[d] = b ? a.im[d][i] - b->im[d][i] : a.im[d][i];
    }
    for (int c = 0; c < 4; ++c) {
      double acc_re = out.re[c][i];
      double acc_im = out.im[c][i];
      for (int d = 0; d < 4; ++d) {
        const double kr = k.re[4 * c + d];
        const double ki = k.im[4 * c + d];
        acc_re = acc_re + (kr * dr[d] - ki * di[d]);
        acc_im = acc_im + (kr * di[d] + ki * dr[d]);
      }
      out.re[c][i] = acc_re;
      out.im[c][i] = acc_im;
    }
  }
}

double max_abs_diff(std::size_t n, const double* x_re, const double* x_im,
                    const double* y_re, const double* y_im) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = x_re[i] - y_re[i];
    const double di = x_im[i] - y_im[i];
    worst = std::max(worst, dr * dr + di * di);
  }
  return std::sqrt(worst);
}

}  // namespace cliff::kernels::scalar
