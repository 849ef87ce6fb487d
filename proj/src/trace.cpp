#include "cliff/trace.hpp"

#include <cmath>

#include "cliff/errors.hpp"

namespace cliff {

GammaWord::GammaWord(std::initializer_list<int> idx)
    : GammaWord(std::vector<int>(idx)) {}

GammaWord::GammaWord(std::vector<int> idx) : indices(std::move(idx)) {
  for (int i : indices) {
    if (i < 1 || i > 4) throw InvalidInput("gamma word indices must lie in 1..4");
  }
}

GammaWord GammaWord::rotated(std::size_t shift) const {
  GammaWord out;
  const std::size_t n = indices.size();
  out.indices.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.indices[i] = indices[(i + shift) % n];
  return out;
}

std::string GammaWord::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(indices[i]);
  }
  return s + "]";
}

complex numeric_trace(const ComplexMatrix4& m) {
  return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3);
}

ComplexMatrix4 word_matrix(const GammaWord& w, const GammaRep& rep) {
  ComplexMatrix4 out = ComplexMatrix4::Identity();
  for (int i : w.indices) out = out * rep[i - 1];
  return out;
}

std::uint64_t SymbolicTracer::key(const std::vector<int>& w) {
  // 2 bits per index plus the length in the top byte; words up to 28 long.
  std::uint64_t k = static_cast<std::uint64_t>(w.size()) << 56;
  for (std::size_t i = 0; i < w.size(); ++i) {
    k |= static_cast<std::uint64_t>(w[i] - 1) << (2 * i);
  }
  return k;
}

double SymbolicTracer::trace(const GammaWord& w) {
  if (w.size() > 28) throw InvalidInput("gamma word too long for symbolic trace");
  return trace_impl(w.indices);
}

double SymbolicTracer::trace_impl(const std::vector<int>& w) {
  const std::size_t n = w.size();
  if (n == 0) return 4.0;
  if (n % 2 == 1) return 0.0;
  const std::uint64_t k = key(w);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;

  double sum = 0.0;
  std::vector<int> rest;
  rest.reserve(n - 2);
  for (std::size_t pos = 1; pos < n; ++pos) {
    if (w[pos] != w[0]) continue;  // eta is diagonal in the frame
    rest.clear();
    for (std::size_t q = 1; q < n; ++q) {
      if (q != pos) rest.push_back(w[q]);
    }
    const double sign = (pos % 2 == 1) ? 1.0 : -1.0;
    sum += sign * eta_[w[0] - 1] * trace_impl(rest);
  }
  memo_.emplace(k, sum);
  return sum;
}

double SymbolicTracer::slash_power_trace(const RealVector4& v, int n) {
  if (n == 0) return 4.0;
  if (n % 2 == 1) return 0.0;
  if (!power_vector_ || *power_vector_ != v) {
    power_memo_.clear();
    power_vector_ = v;
  }
  if (auto it = power_memo_.find(n); it != power_memo_.end()) return it->second;

  std::vector<int> support;
  for (int i = 0; i < 4; ++i)
    if (v[i] != 0.0) support.push_back(i + 1);

  double total = 0.0;
  if (!support.empty()) {
    const std::size_t base = support.size();
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    std::vector<int> word(static_cast<std::size_t>(n));
    while (true) {
      double weight = 1.0;
      for (std::size_t p = 0; p < digits.size(); ++p) {
        word[p] = support[digits[p]];
        weight *= v[word[p] - 1];
      }
      total += weight * trace_impl(word);
      std::size_t p = 0;
      while (p < digits.size() && ++digits[p] == base) digits[p++] = 0;
      if (p == digits.size()) break;
    }
  }
  power_memo_.emplace(n, total);
  return total;
}

double symbolic_trace(const GammaWord& w, const Signature& eta) {
  SymbolicTracer tracer(eta);
  return tracer.trace(w);
}

namespace {

std::vector<complex> poly_multiply(const std::vector<complex>& a,
                                   const std::vector<complex>& b) {
  std::vector<complex> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TraceReport trace_of_element(const AlgebraElement& a, const EvalContext& ctx) {
  TraceReport report;
  report.expression = a.to_string();
  report.numeric = numeric_trace(evaluate(a, ctx));

  SymbolicTracer tracer(ctx.frame().eta);
  complex symbolic = 0.0;
  bool available = true;
  for (const auto& [factors, c] : a.terms()) {
    std::vector<complex> poly{1.0};
    for (const auto& g : factors) poly = poly_multiply(poly, slash_polynomial(g, ctx));
    if (static_cast<int>(poly.size()) - 1 > kMaxSymbolicDegree) {
      available = false;
      break;
    }
    complex word_trace = 0.0;
    for (std::size_t n = 0; n < poly.size(); ++n) {
      if (poly[n] == complex(0.0, 0.0)) continue;
      word_trace += poly[n] * tracer.slash_power_trace(ctx.y_frame(), static_cast<int>(n));
    }
    symbolic += c * word_trace;
  }
  if (available) {
    report.symbolic = symbolic;
    report.residual = std::abs(report.numeric - symbolic);
  }
  return report;
}

}  // namespace cliff

namespace cliff {

namespace {

void expand(std::vector<int> positions, int sign, std::vector<std::pair<int, int>>& pairs,
            std::vector<IndexContraction>& out) {
  if (positions.empty()) {
    out.push_back(IndexContraction{sign, pairs});
    return;
  }
  const int first = positions.front();
  for (std::size_t k = 1; k < positions.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t j = 1; j < positions.size(); ++j) {
      if (j != k) rest.push_back(positions[j]);
    }
    pairs.emplace_back(first, positions[k]);
    expand(std::move(rest), k % 2 == 1 ? sign : -sign, pairs, out);
    pairs.pop_back();
  }
}

}  // namespace

std::vector<IndexContraction> trace_contractions(std::size_t n) {
  std::vector<IndexContraction> out;
  if (n % 2 == 1) return out;
  if (n > 12) throw InvalidInput("generic trace expansion limited to 12 indices");
  std::vector<int> positions(n);
  for (std::size_t i = 0; i < n; ++i) positions[i] = static_cast<int>(i) + 1;
  std::vector<std::pair<int, int>> pairs;
  expand(std::move(positions), 1, pairs, out);
  return out;
}

std::string trace_formula(std::size_t n) {
  if (n % 2 == 1) return "0";
  if (n == 0) return "4";
  std::string s = "4*(";
  const auto terms = trace_contractions(n);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t > 0) s += terms[t].sign > 0 ? " + " : " - ";
    else if (terms[t].sign < 0) s += "-";
    for (std::size_t p = 0; p < terms[t].pairs.size(); ++p) {
      if (p) s += '*';
      s += "eta[i" + std::to_string(terms[t].pairs[p].first) + ",i" +
           std::to_string(terms[t].pairs[p].second) + "]";
    }
  }
  return s + ")";
}

double expand_trace(const GammaWord& w, const Signature& eta) {
  if (w.size() % 2 == 1) return 0.0;
  double sum = 0.0;
  for (const auto& term : trace_contractions(w.size())) {
    double prod = term.sign;
    for (const auto& [a, b] : term.pairs) {
      const int i = w.indices[static_cast<std::size_t>(a - 1)];
      const int j = w.indices[static_cast<std::size_t>(b - 1)];
      prod *= i == j ? eta[i - 1] : 0.0;
    }
    sum += prod;
  }
  return 4.0 * sum;
}

}  // namespace cliff
