#pragma once

#include <array>
#include <string>
#include <string_view>

#include "cliff/linalg.hpp"
#include "cliff/metric.hpp"

namespace cliff {

enum class RepId { dirac, weyl, majorana };

std::string_view to_string(RepId id);
RepId parse_rep_id(std::string_view text);
inline constexpr std::array<RepId, 3> kAllReps{RepId::dirac, RepId::weyl,
                                              RepId::majorana};

/// Four 4x4 complex matrices with gamma_i gamma_j + gamma_j gamma_i = 2 eta_ij I.
///
/// Each representation starts from a standard set for the (+,-,-,-) signature;
/// generators whose square has to change sign are multiplied by i. The
/// Clifford relation and tracelessness are checked when the object is built.
class GammaRep {
 public:
  const ComplexMatrix4& operator[](int i) const {
    return gammas_[static_cast<std::size_t>(i)];
  }
  const std::array<ComplexMatrix4, 4>& gammas() const noexcept { return gammas_; }
  const Signature& signature() const noexcept { return signature_; }
  RepId rep_id() const noexcept { return rep_id_; }

  /// max_ij || {g_i, g_j} - 2 eta_ij I ||_max
  double clifford_residual() const;

  friend GammaRep build_representation(RepId, const Signature&);

 private:
  GammaRep() = default;
  std::array<ComplexMatrix4, 4> gammas_;
  Signature signature_;
  RepId rep_id_ = RepId::dirac;
};

GammaRep build_representation(RepId rep_id, const Signature& signature);

/// sum_i v^i gamma_i
ComplexMatrix4 slash(const GammaRep& rep, const RealVector4& v);

}  // namespace cliff
