#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cliff/algebra.hpp"
#include "cliff/gamma.hpp"
#include "cliff/linalg.hpp"
#include "cliff/metric.hpp"

namespace cliff {

/// Index sequence i1..in (values 1..4) standing for gamma_{i1} ... gamma_{in}.
struct GammaWord {
  std::vector<int> indices;

  GammaWord() = default;
  GammaWord(std::initializer_list<int> idx);
  explicit GammaWord(std::vector<int> idx);

  std::size_t size() const noexcept { return indices.size(); }
  GammaWord rotated(std::size_t shift) const;
  std::string to_string() const;
};

complex numeric_trace(const ComplexMatrix4& m);

/// Product of the gamma matrices named by the word (identity for the empty word).
ComplexMatrix4 word_matrix(const GammaWord& w, const GammaRep& rep);

/// Trace of a gamma word from the Clifford relation alone: Tr(I) = 4, odd
/// words vanish, and even words reduce by
///   Tr(g_{i1} ... g_{in}) = sum_{k=2..n} (-1)^k eta_{i1 ik} Tr(word without 1, k).
/// Sub-word results are memoized for the lifetime of one tracer.
class SymbolicTracer {
 public:
  explicit SymbolicTracer(const Signature& eta) : eta_(eta) {}

  double trace(const GammaWord& w);
  /// Tr(slash(v)^n) summed over all index words of length n.
  double slash_power_trace(const RealVector4& v, int n);

 private:
  double trace_impl(const std::vector<int>& w);
  static std::uint64_t key(const std::vector<int>& w);

  Signature eta_;
  std::unordered_map<std::uint64_t, double> memo_;
  std::optional<RealVector4> power_vector_;
  std::unordered_map<int, double> power_memo_;
};

double symbolic_trace(const GammaWord& w, const Signature& eta);

/// One term of the generic expansion: sign times a product of eta over
/// position pairs (1-based positions in the word).
struct IndexContraction {
  int sign = 1;
  std::vector<std::pair<int, int>> pairs;
};

/// Tr(g_{i1} ... g_{in}) = 4 * sum over terms, in recursion order. Empty for odd n.
std::vector<IndexContraction> trace_contractions(std::size_t n);

/// "4*(eta[i1,i2]*eta[i3,i4] - eta[i1,i3]*eta[i2,i4] + eta[i1,i4]*eta[i2,i3])";
/// "4" for n = 0 and "0" for odd n.
std::string trace_formula(std::size_t n);

/// Evaluates the expansion on a concrete word.
double expand_trace(const GammaWord& w, const Signature& eta);

struct TraceReport {
  std::string expression;
  complex numeric{0.0, 0.0};
  std::optional<complex> symbolic;
  double residual = 0.0;
};

/// Symbolic expansion is skipped (reported absent) above this slash(y) degree.
inline constexpr int kMaxSymbolicDegree = 8;

/// Numeric path: trace of evaluate(a). Symbolic path: every word is expanded as
/// a polynomial in slash(y) and each power is traced word by word with the
/// recursion above.
TraceReport trace_of_element(const AlgebraElement& a, const EvalContext& ctx);

}  // namespace cliff
