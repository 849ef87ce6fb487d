#include "cliff/dsl.hpp"
#include "cliff/trace.hpp"

namespace cliff::dsl {

namespace {

// Pure numbers stay scalars until they meet an algebra element.
struct Partial {
  bool is_scalar = true;
  complex c{0.0, 0.0};
  AlgebraElement element;

  AlgebraElement as_element() const {
    return is_scalar ? (c == complex(0.0, 0.0) ? AlgebraElement{} : AlgebraElement::unit(c))
                     : element;
  }
};

Partial scalar(complex c) { return Partial{true, c, {}}; }
Partial element(AlgebraElement e) { return Partial{false, {}, std::move(e)}; }

const Expr* first_normalized(const Expr& e) {
  if (e.kind == NodeKind::generator_ref &&
      (e.generator == GeneratorKind::M || e.generator == GeneratorKind::Mt)) {
    return &e;
  }
  for (const auto& c : e.children) {
    if (const Expr* hit = first_normalized(*c)) return hit;
  }
  return nullptr;
}

Generator generator_of(const Expr& e) {
  if (e.generator == GeneratorKind::M) return Generator::M();
  if (e.generator == GeneratorKind::Mt) return Generator::Mt();
  return Generator(e.generator, e.forms);
}

class Evaluator {
 public:
  explicit Evaluator(const EvalContext* ctx) : ctx_(ctx) {}

  Partial run(const Expr& e) {
    switch (e.kind) {
      case NodeKind::generator_ref:
        if (ctx_) {
          for (const auto& f : e.forms) {
            if (!ctx_->has_form(f)) {
              throw EvalError("UnknownForm", "unknown one-form '" + f + "'", e.loc);
            }
          }
        }
        return element(AlgebraElement(generator_of(e)));
      case NodeKind::scale: {
        Partial p = run(*e.children[0]);
        if (p.is_scalar) return scalar(e.scalar * p.c);
        return element(scale(e.scalar, p.element));
      }
      case NodeKind::product: {
        Partial acc = scalar(1.0);
        for (const auto& f : e.children) {
          Partial p = run(*f);
          if (acc.is_scalar && p.is_scalar) {
            acc.c *= p.c;
          } else if (acc.is_scalar) {
            acc = element(scale(acc.c, p.element));
          } else if (p.is_scalar) {
            acc.element = scale(p.c, acc.element);
          } else {
            acc.element = multiply(acc.element, p.element);
          }
        }
        return acc;
      }
      case NodeKind::sum: {
        Partial acc = scalar(0.0);
        for (const auto& t : e.children) {
          Partial p = run(*t);
          if (acc.is_scalar && p.is_scalar) {
            acc.c += p.c;
          } else {
            acc = element(add(acc.as_element(), p.as_element()));
          }
        }
        return acc;
      }
      case NodeKind::grade_part: {
        Partial p = run(*e.children[0]);
        if (p.is_scalar) return scalar(e.grade == 0 ? p.c : complex(0.0, 0.0));
        return element(grade_part(p.element, e.grade));
      }
      case NodeKind::trace_of: {
        if (!ctx_) throw EvalError("InvalidInput", "Tr needs an evaluation context", e.loc);
        Partial p = run(*e.children[0]);
        if (p.is_scalar) return scalar(4.0 * p.c);
        return scalar(guarded(e, [&] { return trace_of_element(p.element, *ctx_).numeric; }));
      }
    }
    return scalar(0.0);
  }

  template <class F>
  auto guarded(const Expr& e, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const NullVectorForM& err) {
      const Expr* at = first_normalized(e);
      throw EvalError("NullVectorForM", err.what(), at ? at->loc : e.loc);
    } catch (const UnknownForm& err) {
      throw EvalError("UnknownForm", err.what(), e.loc);
    } catch (const EvalError&) {
      throw;
    } catch (const Error& err) {
      throw EvalError("Error", err.what(), e.loc);
    }
  }

 private:
  const EvalContext* ctx_;
};

}  // namespace

AlgebraElement to_element(const Expr& e) {
  return Evaluator(nullptr).run(e).as_element();
}

Value eval_expr(const Expr& e, const EvalContext& ctx) {
  Evaluator ev(&ctx);
  Partial p = ev.run(e);
  if (p.is_scalar) return p.c;
  return ev.guarded(e, [&] { return evaluate(p.element, ctx); });
}

}  // namespace cliff::dsl
