#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cliff/gamma.hpp"
#include "cliff/linalg.hpp"
#include "cliff/metric.hpp"

namespace cliff {

enum class GeneratorKind { M, Mt, F, Ft };

/// One of M, Mt, F[A..], Ft[A..]. F-type generators carry 1 to 3 form names;
/// F[A,B] is symmetric in its forms, so names are kept sorted.
class Generator {
 public:
  static constexpr std::size_t kMaxArity = 3;

  static Generator M() { return Generator(GeneratorKind::M, {}); }
  static Generator Mt() { return Generator(GeneratorKind::Mt, {}); }
  static Generator F(std::vector<std::string> forms) {
    return Generator(GeneratorKind::F, std::move(forms));
  }
  static Generator Ft(std::vector<std::string> forms) {
    return Generator(GeneratorKind::Ft, std::move(forms));
  }

  Generator(GeneratorKind kind, std::vector<std::string> forms);

  GeneratorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& forms() const noexcept { return forms_; }
  std::size_t arity() const noexcept { return forms_.size(); }
  bool tilde() const noexcept {
    return kind_ == GeneratorKind::Mt || kind_ == GeneratorKind::Ft;
  }
  /// y-homogeneity degree: 0 for M/Mt, number of forms otherwise.
  int degree() const noexcept { return static_cast<int>(forms_.size()); }
  /// "M", "Mt", "F", "Ft", "F2", "Ft2", "F3", "Ft3"
  std::string kind_label() const;
  /// "M", "Mt", "F[A]", "Ft[A,B]"
  std::string to_string() const;

  /// Canonical order: (arity, tilde, form names).
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b);
  friend bool operator==(const Generator& a, const Generator& b) = default;

 private:
  GeneratorKind kind_;
  std::vector<std::string> forms_;
};

using FactorList = std::vector<Generator>;

/// Coefficient times a commutative product of generators. An empty factor list
/// is the unit element.
struct Word {
  FactorList factors;
  complex coefficient{1.0, 0.0};

  int degree() const;
};

/// Finite complex combination of words in canonical form: factors sorted, like
/// terms merged and zero coefficients dropped.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(const Generator& g) { add_word(FactorList{g}, 1.0); }
  explicit AlgebraElement(const Word& w) { add_word(w.factors, w.coefficient); }

  static AlgebraElement unit(complex c = 1.0) {
    AlgebraElement e;
    e.add_word({}, c);
    return e;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::vector<Word> words() const;
  const std::map<FactorList, complex>& terms() const noexcept { return terms_; }

  /// "(1+0i)*M*F[A] + (2+0i)*Ft[A]"; "0" for the zero element.
  std::string to_string() const;

  /// Maximum degree of any word, -1 for zero.
  int max_degree() const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  void add_word(FactorList factors, complex c);
  std::map<FactorList, complex> terms_;

  friend AlgebraElement add(const AlgebraElement&, const AlgebraElement&);
  friend AlgebraElement scale(complex, const AlgebraElement&);
  friend AlgebraElement multiply(const AlgebraElement&, const AlgebraElement&);
};

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(complex c, const AlgebraElement& a);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
std::map<int, AlgebraElement> grade_decompose(const AlgebraElement& a);
AlgebraElement grade_part(const AlgebraElement& a, int degree);

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return add(a, b);
}
inline AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return add(a, scale(-1.0, b));
}
inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return multiply(a, b);
}
inline AlgebraElement operator*(complex c, const AlgebraElement& a) {
  return scale(c, a);
}

/// Everything needed to realize a word as a matrix at one point (x, y):
/// metric, its orthonormal frame, named one-forms, the tangent vector and a
/// gamma representation whose signature matches the frame.
class EvalContext {
 public:
  EvalContext(const Metric4& metric, std::map<std::string, OneForm> forms,
              const Tangent& y, RepId rep = RepId::dirac,
              double tol_null = kDefaultNullTolerance);

  const Metric4& metric() const noexcept { return metric_; }
  const Frame4& frame() const noexcept { return frame_; }
  const GammaRep& rep() const noexcept { return rep_; }
  const Tangent& y() const noexcept { return y_; }
  const std::map<std::string, OneForm>& forms() const noexcept { return forms_; }
  double tol_null() const noexcept { return tol_null_; }

  const OneForm& form(const std::string& name) const;
  bool has_form(const std::string& name) const { return forms_.count(name) != 0; }

  /// Frame components of y.
  const RealVector4& y_frame() const noexcept { return y_frame_; }
  /// eta(y, y) from frame components.
  double eta_yy() const noexcept { return eta_yy_; }
  /// gamma_a y^a in the frame.
  const ComplexMatrix4& slash_y() const noexcept { return slash_y_; }
  /// A_a y^a with frame components of the named form.
  double form_dot_y(const std::string& name) const;

  /// Same metric, forms and representation at another tangent vector.
  EvalContext with_y(const Tangent& y) const;
  EvalContext with_rep(RepId rep) const;
  EvalContext with_tol_null(double tol) const;

 private:
  EvalContext(const Metric4& metric, const Frame4& frame,
              std::map<std::string, OneForm> forms, const Tangent& y,
              const GammaRep& rep, double tol_null);

  Metric4 metric_;
  Frame4 frame_;
  std::map<std::string, OneForm> forms_;
  Tangent y_;
  GammaRep rep_;
  double tol_null_;
  RealVector4 y_frame_;
  double eta_yy_;
  ComplexMatrix4 slash_y_;
};

/// Throws NullVectorForM when g is M/Mt and |eta(y,y)| <= tol_null, UnknownForm
/// for unbound form names.
ComplexMatrix4 evaluate_generator(const Generator& g, const EvalContext& ctx);

/// Coefficients c_k of the generator written as sum_k c_k slash(y)^k. Every
/// generator is a polynomial in slash(y) with scalar coefficients.
std::vector<complex> slash_polynomial(const Generator& g, const EvalContext& ctx);

ComplexMatrix4 evaluate(const AlgebraElement& a, const EvalContext& ctx);

/// eval(a) eval(b) - eval(b) eval(a)
ComplexMatrix4 commutator(const AlgebraElement& a, const AlgebraElement& b,
                          const EvalContext& ctx);

}  // namespace cliff
