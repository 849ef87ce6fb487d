#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cliff/algebra.hpp"
#include "cliff/gamma.hpp"
#include "cliff/linalg.hpp"
#include "cliff/metric.hpp"

namespace cliff {

// First-order operators on flat space, written in an orthonormal frame with
// metric eta = rep.signature(). Plane waves use the phase exp(-i p_j x^j), so
// i d_j acts as multiplication by p_j and the symbol replaces i d_j by p_j.

enum class OperatorKind {
  dirac_mass,    // i gamma^j d_j - m
  dirac_A,       // i (gamma^j - A^j) d_j
  u1_covariant,  // gamma^j (i d_j - A_j)
};

std::string_view to_string(OperatorKind k);
OperatorKind parse_operator_kind(std::string_view text);

struct FlatOperator {
  OperatorKind kind = OperatorKind::dirac_mass;
  double m = 0.0;
  std::optional<OneForm> A;

  /// Throws MassRequired / InvalidInput when the kind's requirements are unmet.
  void validate() const;
};

struct PlaneWave {
  RealVector4 p = RealVector4::Zero();  // lower-index momentum
  ComplexVector4 u = ComplexVector4::Zero();
};

/// Periodic lattice with `extent` points per axis and spacing h.
struct Lattice {
  double h = 0.0;
  int extent = 0;

  /// Period 2 pi, so integer momenta are commensurate.
  static Lattice periodic(int extent);
  double length() const { return h * extent; }
  std::size_t sites() const;
  void validate() const;
};

/// Four-component complex field on a lattice, split into real/imaginary planes.
/// Site index: x0 + n (x1 + n (x2 + n x3)).
struct SpinorField {
  int extent = 0;
  std::array<std::vector<double>, 4> re;
  std::array<std::vector<double>, 4> im;

  explicit SpinorField(int n = 0);
  std::size_t sites() const { return re[0].size(); }
  complex at(int component, std::size_t site) const {
    return {re[component][site], im[component][site]};
  }
};

/// sum_j C^j p_j + D, where the operator is i C^j d_j + D.
ComplexMatrix4 symbol_matrix(const FlatOperator& op, const RealVector4& p,
                             const GammaRep& rep);

/// Throws IncommensurateMomentum unless p_j L / 2pi is an integer for every j.
void check_commensurate(const PlaneWave& w, const Lattice& lat);

SpinorField sample_plane_wave(const PlaneWave& w, const Lattice& lat);

/// Central differences for d_j on the periodic lattice.
SpinorField apply_discrete(const FlatOperator& op, const SpinorField& field,
                           const Lattice& lat, const GammaRep& rep);
SpinorField apply_discrete(const FlatOperator& op, const PlaneWave& w, const Lattice& lat,
                           const GammaRep& rep);

/// max over sites and components of |discrete - symbol u exp(-i p.x)|.
double discretization_error(const FlatOperator& op, const PlaneWave& w, const Lattice& lat,
                            const GammaRep& rep);

struct ConvergenceReport {
  std::vector<int> extents;
  std::vector<double> steps;
  std::vector<double> max_errors;
  std::vector<double> orders;  // log2(e_l / e_{l+1})
  double order_estimate = 0.0;  // least-squares slope of log e against log h
  double symbol_residual = 0.0;
};

/// Halves h `levels - 1` times starting from `base_extent` points per axis.
ConvergenceReport convergence_study(const FlatOperator& op, const PlaneWave& w,
                                    const GammaRep& rep, int levels = 3,
                                    int base_extent = 8);

/// Distance between the operator symbol and the algebra element it corresponds
/// to at y = p^sharp: m M(y/m) with m = |eta(p,p)|^{1/2} for dirac_mass,
/// F[A](y) for dirac_A and Gamma_{A,1}(y) for u1_covariant.
double symbol_residual(const FlatOperator& op, const RealVector4& p, const GammaRep& rep);

/// Gamma_{A,m} = slash(y) - m slash(A^sharp), in the context's frame.
ComplexMatrix4 gamma_element(const EvalContext& ctx, const OneForm& A, double m);

struct GammaNormTrace {
  double value = 0.0;              // 1/4 Tr(M Gamma_{A,m})
  double homogeneous_part = 0.0;   // f1: f1(lambda y) = lambda f1(y)
  double constant_part = 0.0;      // f0: f0(lambda y) = f0(y)
  double reconstruction_residual = 0.0;  // max over lambda in {0.5, 2, 4}
  bool non_homogeneous = false;
};

/// Throws NullVectorForM on the null cone.
GammaNormTrace gamma_norm_trace(const EvalContext& ctx, const OneForm& A, double m);

}  // namespace cliff
