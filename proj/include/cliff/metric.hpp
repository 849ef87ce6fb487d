#pragma once

#include <array>
#include <string>
#include <string_view>

#include "cliff/linalg.hpp"

namespace cliff {

/// Ordered quadruple of signs, one per orthonormal frame direction.
class Signature {
 public:
  /// Mostly-plus Lorentzian convention, timelike vectors have negative norm.
  Signature() : signs_{-1, 1, 1, 1} {}
  explicit Signature(std::array<int, 4> signs);

  int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
  const std::array<int, 4>& signs() const noexcept { return signs_; }
  int negatives() const;
  bool is_lorentzian() const;
  RealMatrix4 as_matrix() const;

  /// Parses "-1,1,1,1" (also accepts "-+++" style).
  static Signature parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::array<int, 4> signs_;
};

/// Upper-index vector y^i.
struct Tangent {
  RealVector4 components = RealVector4::Zero();

  Tangent() = default;
  explicit Tangent(const RealVector4& c) : components(c) {}
  Tangent(double a, double b, double c, double d) : components(a, b, c, d) {}
  double operator[](int i) const { return components[i]; }
};

/// Lower-index covector A_i with a label used to reference it from algebra words.
struct OneForm {
  RealVector4 components = RealVector4::Zero();
  std::string name;

  OneForm() = default;
  OneForm(const RealVector4& c, std::string n = "A")
      : components(c), name(std::move(n)) {}
  double operator[](int i) const { return components[i]; }
};

/// Contraction A_i y^i; index position makes this metric-free.
inline double pair(const OneForm& a, const Tangent& y) {
  return a.components.dot(y.components);
}

/// Non-degenerate symmetric bilinear form on a 4-dimensional space.
///
/// Only the symmetric part of the input is stored. The signature records how
/// the signs of the eigenvalues are ordered when an orthonormal frame is built.
class Metric4 {
 public:
  /// diag(signature).
  static Metric4 diagonal(const Signature& signature);
  /// General symmetric metric; signs are ordered negatives-first by default.
  static Metric4 from_components(const RealMatrix4& components);
  /// General metric with an explicit frame ordering convention. The sign
  /// counts of `order` must match the eigenvalues.
  static Metric4 from_components(const RealMatrix4& components,
                                 const Signature& order);

  const RealMatrix4& components() const noexcept { return components_; }
  const Signature& signature() const noexcept { return signature_; }
  double determinant() const;
  bool is_diagonal() const;

 private:
  Metric4(const RealMatrix4& components, const Signature& signature)
      : components_(components), signature_(signature) {}

  RealMatrix4 components_;
  Signature signature_;
};

/// Threshold below which |det| counts as degenerate: 1e-12 * (max |g_ij|)^4.
bool is_degenerate(const RealMatrix4& components);

/// Orthonormal basis: columns e_a with g(e_a, e_b) = eta_a delta_ab.
struct Frame4 {
  RealMatrix4 basis = RealMatrix4::Identity();
  RealMatrix4 inverse = RealMatrix4::Identity();
  Signature eta;

  /// Frame components of a tangent vector (solves basis * out = y).
  RealVector4 to_frame(const Tangent& y) const { return inverse * y.components; }
  /// Frame components of a covector, A_a = A_i e_a^i.
  RealVector4 to_frame(const OneForm& a) const {
    return basis.transpose() * a.components;
  }
};

enum class CausalCharacter { timelike, null, spacelike };

std::string_view to_string(CausalCharacter c);

inline constexpr double kDefaultNullTolerance = 1e-12;

double norm_bilinear(const Metric4& m, const Tangent& y, const Tangent& z);
double norm_squared(const Metric4& m, const Tangent& y);
CausalCharacter causal_character(const Metric4& m, const Tangent& y,
                                 double tol = kDefaultNullTolerance);

Metric4 dual_metric(const Metric4& m);
double dual_norm_squared(const Metric4& m, const OneForm& a);

/// y^i = g^{ij} A_j
Tangent raise(const Metric4& m, const OneForm& a);
/// A_i = g_ij y^j
OneForm lower(const Metric4& m, const Tangent& y, std::string name = "y");

Frame4 orthonormal_frame(const Metric4& m);

}  // namespace cliff
