#pragma once

#include <complex>

#include <Eigen/Core>
#include <Eigen/LU>

namespace cliff {

using complex = std::complex<double>;
using RealMatrix4 = Eigen::Matrix4d;
using RealVector4 = Eigen::Vector4d;
using ComplexMatrix4 = Eigen::Matrix4cd;
using ComplexVector4 = Eigen::Vector4cd;

inline double max_norm(const ComplexMatrix4& m) {
  return m.cwiseAbs().maxCoeff();
}

inline double max_norm(const RealMatrix4& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_norm(const RealVector4& v) { return v.cwiseAbs().maxCoeff(); }

inline ComplexMatrix4 identity4() { return ComplexMatrix4::Identity(); }

}  // namespace cliff
