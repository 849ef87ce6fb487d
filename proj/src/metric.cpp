#include "cliff/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "cliff/errors.hpp"

namespace cliff {

Signature::Signature(std::array<int, 4> signs) : signs_(signs) {
  for (int s : signs_) {
    if (s != 1 && s != -1) {
      throw InvalidInput("signature entries must be +1 or -1");
    }
  }
}

int Signature::negatives() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1));
}

bool Signature::is_lorentzian() const {
  const int n = negatives();
  return n == 1 || n == 3;
}

RealMatrix4 Signature::as_matrix() const {
  RealMatrix4 m = RealMatrix4::Zero();
  for (int i = 0; i < 4; ++i) m(i, i) = signs_[static_cast<std::size_t>(i)];
  return m;
}

Signature Signature::parse(std::string_view text) {
  std::array<int, 4> out{};
  std::size_t n = 0;
  // compact form: "-+++"
  if (text.size() == 4 &&
      std::all_of(text.begin(), text.end(),
                  [](char c) { return c == '+' || c == '-'; })) {
    for (char c : text) out[n++] = (c == '-') ? -1 : 1;
    return Signature(out);
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || n >= 4) {
      throw InvalidInput("cannot parse signature '" + std::string(text) + "'");
    }
    out[n++] = v;
    pos = end + 1;
  }
  if (n != 4) throw InvalidInput("signature needs exactly four entries");
  return Signature(out);
}

std::string Signature::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) s += ',';
    s += signs_[i] < 0 ? "-1" : "1";
  }
  return s;
}

bool is_degenerate(const RealMatrix4& components) {
  const double scale = components.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale)) return true;
  return std::abs(components.determinant()) < 1e-12 * std::pow(scale, 4);
}

namespace {

RealMatrix4 symmetric_part(const RealMatrix4& g) {
  return 0.5 * (g + g.transpose());
}

int count_negative_eigenvalues(const RealMatrix4& g) {
  Eigen::SelfAdjointEigenSolver<RealMatrix4> es(g, Eigen::EigenvaluesOnly);
  int n = 0;
  for (int i = 0; i < 4; ++i) n += es.eigenvalues()[i] < 0.0 ? 1 : 0;
  return n;
}

}  // namespace

Metric4 Metric4::diagonal(const Signature& signature) {
  return Metric4(signature.as_matrix(), signature);
}

Metric4 Metric4::from_components(const RealMatrix4& components) {
  if (!components.allFinite()) throw InvalidInput("metric has non-finite entries");
  const RealMatrix4 g = symmetric_part(components);
  if (is_degenerate(g)) throw DegenerateMetric("metric is degenerate");
  const int neg = count_negative_eigenvalues(g);
  std::array<int, 4> s{};
  for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = i < neg ? -1 : 1;
  return Metric4(g, Signature(s));
}

Metric4 Metric4::from_components(const RealMatrix4& components,
                                 const Signature& order) {
  if (!components.allFinite()) throw InvalidInput("metric has non-finite entries");
  const RealMatrix4 g = symmetric_part(components);
  if (is_degenerate(g)) throw DegenerateMetric("metric is degenerate");
  if (count_negative_eigenvalues(g) != order.negatives()) {
    throw InvalidInput("signature " + order.to_string() +
                       " does not match the eigenvalue signs of the metric");
  }
  return Metric4(g, order);
}

double Metric4::determinant() const { return components_.determinant(); }

bool Metric4::is_diagonal() const {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && components_(i, j) != 0.0) return false;
  return true;
}

std::string_view to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::timelike: return "timelike";
    case CausalCharacter::null: return "null";
    case CausalCharacter::spacelike: return "spacelike";
  }
  return "?";
}

double norm_bilinear(const Metric4& m, const Tangent& y, const Tangent& z) {
  // Accumulate symmetric pairs together so that swapping y and z is exact.
  const RealMatrix4& g = m.components();
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    s += g(i, i) * (y[i] * z[i]);
    for (int j = i + 1; j < 4; ++j) {
      s += g(i, j) * (y[i] * z[j] + y[j] * z[i]);
    }
  }
  return s;
}

double norm_squared(const Metric4& m, const Tangent& y) {
  return norm_bilinear(m, y, y);
}

CausalCharacter causal_character(const Metric4& m, const Tangent& y, double tol) {
  if (tol < 0.0) throw InvalidInput("null tolerance must be non-negative");
  const double n = norm_squared(m, y);
  if (n < -tol) return CausalCharacter::timelike;
  if (std::abs(n) <= tol) return CausalCharacter::null;
  return CausalCharacter::spacelike;
}

Metric4 dual_metric(const Metric4& m) {
  if (is_degenerate(m.components())) throw DegenerateMetric("metric is degenerate");
  if (m.is_diagonal()) {
    RealMatrix4 inv = RealMatrix4::Zero();
    for (int i = 0; i < 4; ++i) inv(i, i) = 1.0 / m.components()(i, i);
    return Metric4::from_components(inv, m.signature());
  }
  return Metric4::from_components(m.components().inverse(), m.signature());
}

double dual_norm_squared(const Metric4& m, const OneForm& a) {
  const Metric4 dual = dual_metric(m);
  return a.components.dot(dual.components() * a.components);
}

Tangent raise(const Metric4& m, const OneForm& a) {
  return Tangent(dual_metric(m).components() * a.components);
}

OneForm lower(const Metric4& m, const Tangent& y, std::string name) {
  return OneForm(m.components() * y.components, std::move(name));
}

Frame4 orthonormal_frame(const Metric4& m) {
  const RealMatrix4& g = m.components();
  if (is_degenerate(g)) throw DegenerateMetric("metric is degenerate");

  RealVector4 values;
  RealMatrix4 vectors;
  if (m.is_diagonal()) {
    values = g.diagonal();
    vectors = RealMatrix4::Identity();
  } else {
    Eigen::SelfAdjointEigenSolver<RealMatrix4> es(g);
    values = es.eigenvalues();
    vectors = es.eigenvectors();
    // Fix the sign ambiguity: largest-magnitude component positive.
    for (int c = 0; c < 4; ++c) {
      Eigen::Index k = 0;
      vectors.col(c).cwiseAbs().maxCoeff(&k);
      if (vectors(k, c) < 0.0) vectors.col(c) *= -1.0;
    }
  }

  std::vector<int> negative, positive;
  for (int i = 0; i < 4; ++i) (values[i] < 0.0 ? negative : positive).push_back(i);

  const Signature& order = m.signature();
  Frame4 frame;
  frame.eta = order;
  std::size_t next_neg = 0, next_pos = 0;
  for (int a = 0; a < 4; ++a) {
    int src = -1;
    if (order[a] < 0 && next_neg < negative.size()) src = negative[next_neg++];
    if (order[a] > 0 && next_pos < positive.size()) src = positive[next_pos++];
    if (src < 0) throw InvalidInput("signature order does not match metric");
    frame.basis.col(a) = vectors.col(src) / std::sqrt(std::abs(values[src]));
  }
  frame.inverse = frame.basis.inverse();
  return frame;
}

}  // namespace cliff
