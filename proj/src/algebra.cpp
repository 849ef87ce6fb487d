#include "cliff/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "cliff/errors.hpp"
#include "cliff/format.hpp"

namespace cliff {

Generator::Generator(GeneratorKind kind, std::vector<std::string> forms)
    : kind_(kind), forms_(std::move(forms)) {
  const bool m_type = kind_ == GeneratorKind::M || kind_ == GeneratorKind::Mt;
  if (m_type && !forms_.empty()) {
    throw UnsupportedArity("M and Mt take no one-forms");
  }
  if (!m_type && forms_.empty()) {
    throw UnsupportedArity("F and Ft need at least one one-form");
  }
  if (forms_.size() > kMaxArity) {
    throw UnsupportedArity("F-type generators support at most 3 one-forms, got " +
                           std::to_string(forms_.size()));
  }
  std::sort(forms_.begin(), forms_.end());
}

std::string Generator::kind_label() const {
  switch (kind_) {
    case GeneratorKind::M: return "M";
    case GeneratorKind::Mt: return "Mt";
    case GeneratorKind::F:
      return arity() == 1 ? "F" : "F" + std::to_string(arity());
    case GeneratorKind::Ft:
      return arity() == 1 ? "Ft" : "Ft" + std::to_string(arity());
  }
  return "?";
}

std::string Generator::to_string() const {
  switch (kind_) {
    case GeneratorKind::M: return "M";
    case GeneratorKind::Mt: return "Mt";
    default: break;
  }
  std::string s = kind_ == GeneratorKind::F ? "F[" : "Ft[";
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (i) s += ',';
    s += forms_[i];
  }
  return s + "]";
}

std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  if (auto c = a.tilde() <=> b.tilde(); c != 0) return c;
  return a.forms_ <=> b.forms_;
}

int Word::degree() const {
  int d = 0;
  for (const auto& g : factors) d += g.degree();
  return d;
}

void AlgebraElement::add_word(FactorList factors, complex c) {
  if (c == complex(0.0, 0.0)) return;
  std::sort(factors.begin(), factors.end());
  auto [it, inserted] = terms_.try_emplace(std::move(factors), c);
  if (!inserted) {
    it->second += c;
    if (it->second == complex(0.0, 0.0)) terms_.erase(it);
  }
}

std::vector<Word> AlgebraElement::words() const {
  std::vector<Word> out;
  out.reserve(terms_.size());
  for (const auto& [factors, c] : terms_) out.push_back(Word{factors, c});
  return out;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [factors, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += "(" + format_complex(c) + ")";
    for (const auto& g : factors) s += "*" + g.to_string();
  }
  return s;
}

int AlgebraElement::max_degree() const {
  int d = -1;
  for (const auto& [factors, c] : terms_) d = std::max(d, Word{factors, c}.degree());
  return d;
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out = a;
  for (const auto& [factors, c] : b.terms_) out.add_word(factors, c);
  return out;
}

AlgebraElement scale(complex c, const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [factors, coef] : a.terms_) out.add_word(factors, c * coef);
  return out;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [fa, ca] : a.terms_) {
    for (const auto& [fb, cb] : b.terms_) {
      FactorList joined = fa;
      joined.insert(joined.end(), fb.begin(), fb.end());
      out.add_word(std::move(joined), ca * cb);
    }
  }
  return out;
}

std::map<int, AlgebraElement> grade_decompose(const AlgebraElement& a) {
  std::map<int, AlgebraElement> parts;
  for (const Word& w : a.words()) {
    parts[w.degree()] = add(parts[w.degree()], AlgebraElement(w));
  }
  return parts;
}

AlgebraElement grade_part(const AlgebraElement& a, int degree) {
  auto parts = grade_decompose(a);
  auto it = parts.find(degree);
  return it == parts.end() ? AlgebraElement{} : it->second;
}

// ---------------------------------------------------------------------------

EvalContext::EvalContext(const Metric4& metric, std::map<std::string, OneForm> forms,
                         const Tangent& y, RepId rep, double tol_null)
    : EvalContext(metric, orthonormal_frame(metric), std::move(forms), y,
                  build_representation(rep, metric.signature()), tol_null) {}

EvalContext::EvalContext(const Metric4& metric, const Frame4& frame,
                         std::map<std::string, OneForm> forms, const Tangent& y,
                         const GammaRep& rep, double tol_null)
    : metric_(metric),
      frame_(frame),
      forms_(std::move(forms)),
      y_(y),
      rep_(rep),
      tol_null_(tol_null) {
  if (!(tol_null_ >= 0.0)) throw InvalidInput("null tolerance must be non-negative");
  if (!y_.components.allFinite()) throw InvalidInput("tangent vector is not finite");
  if (!(rep_.signature() == frame_.eta)) {
    throw InvalidInput("representation signature differs from frame signature");
  }
  for (auto& [name, form] : forms_) {
    if (!form.components.allFinite()) {
      throw InvalidInput("one-form '" + name + "' is not finite");
    }
    form.name = name;
  }
  y_frame_ = frame_.to_frame(y_);
  eta_yy_ = 0.0;
  for (int a = 0; a < 4; ++a) eta_yy_ += frame_.eta[a] * y_frame_[a] * y_frame_[a];
  slash_y_ = slash(rep_, y_frame_);
}

const OneForm& EvalContext::form(const std::string& name) const {
  auto it = forms_.find(name);
  if (it == forms_.end()) throw UnknownForm(name);
  return it->second;
}

double EvalContext::form_dot_y(const std::string& name) const {
  return frame_.to_frame(form(name)).dot(y_frame_);
}

EvalContext EvalContext::with_y(const Tangent& y) const {
  return EvalContext(metric_, frame_, forms_, y, rep_, tol_null_);
}

EvalContext EvalContext::with_rep(RepId rep) const {
  return EvalContext(metric_, frame_, forms_, y_,
                     build_representation(rep, frame_.eta), tol_null_);
}

EvalContext EvalContext::with_tol_null(double tol) const {
  return EvalContext(metric_, frame_, forms_, y_, rep_, tol);
}

namespace {

double m_normalization(const EvalContext& ctx) {
  const double n2 = ctx.eta_yy();
  if (!(std::abs(n2) > ctx.tol_null())) {
    throw NullVectorForM("M/Mt undefined on the null cone: |eta(y,y)| = " +
                         format_double(std::abs(n2)) +
                         " <= " + format_double(ctx.tol_null()));
  }
  return std::sqrt(std::abs(n2));
}

double forms_product(const Generator& g, const EvalContext& ctx) {
  double p = 1.0;
  for (const auto& name : g.forms()) p *= ctx.form_dot_y(name);
  return p;
}

}  // namespace

ComplexMatrix4 evaluate_generator(const Generator& g, const EvalContext& ctx) {
  const ComplexMatrix4 id = ComplexMatrix4::Identity();
  switch (g.kind()) {
    case GeneratorKind::M:
      return ctx.slash_y() / m_normalization(ctx) - id;
    case GeneratorKind::Mt:
      return ctx.slash_y() / m_normalization(ctx) + id;
    case GeneratorKind::F:
    case GeneratorKind::Ft: {
      const double p = forms_product(g, ctx);
      ComplexMatrix4 lead = ctx.slash_y();
      for (std::size_t k = 1; k < g.arity(); ++k) lead = lead * ctx.slash_y();
      return g.kind() == GeneratorKind::F ? ComplexMatrix4(lead - p * id)
                                          : ComplexMatrix4(lead + p * id);
    }
  }
  return id;
}

std::vector<complex> slash_polynomial(const Generator& g, const EvalContext& ctx) {
  switch (g.kind()) {
    case GeneratorKind::M:
      return {-1.0, 1.0 / m_normalization(ctx)};
    case GeneratorKind::Mt:
      return {1.0, 1.0 / m_normalization(ctx)};
    case GeneratorKind::F:
    case GeneratorKind::Ft: {
      std::vector<complex> c(g.arity() + 1, 0.0);
      const double p = forms_product(g, ctx);
      c[0] = g.kind() == GeneratorKind::F ? -p : p;
      c[g.arity()] += 1.0;
      return c;
    }
  }
  return {1.0};
}

ComplexMatrix4 evaluate(const AlgebraElement& a, const EvalContext& ctx) {
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  std::map<Generator, ComplexMatrix4> cache;
  for (const auto& [factors, c] : a.terms()) {
    ComplexMatrix4 prod = ComplexMatrix4::Identity();
    for (const auto& g : factors) {
      auto it = cache.find(g);
      if (it == cache.end()) it = cache.emplace(g, evaluate_generator(g, ctx)).first;
      prod = prod * it->second;
    }
    out += c * prod;
  }
  return out;
}

ComplexMatrix4 commutator(const AlgebraElement& a, const AlgebraElement& b,
                          const EvalContext& ctx) {
  const ComplexMatrix4 ea = evaluate(a, ctx);
  const ComplexMatrix4 eb = evaluate(b, ctx);
  return ea * eb - eb * ea;
}

}  // namespace cliff
