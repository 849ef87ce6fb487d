#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cliff/algebra.hpp"
#include "cliff/errors.hpp"

namespace cliff::dsl {

enum class NodeKind { trace_of, product, sum, scale, generator_ref, grade_part };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// One AST node. `children` holds the single operand of trace_of, scale and
/// grade_part, and the operand list of product and sum. A bare scalar is
/// scale(c, product[]).
struct Expr {
  NodeKind kind = NodeKind::product;
  SourceLocation loc;
  std::vector<ExprPtr> children;
  complex scalar{1.0, 0.0};
  GeneratorKind generator = GeneratorKind::M;
  std::vector<std::string> forms;  // as written
  int grade = 0;

  bool is_bare_scalar() const {
    return kind == NodeKind::scale && children.size() == 1 &&
           children[0]->kind == NodeKind::product && children[0]->children.empty();
  }
};

/// Locations are ignored.
bool structurally_equal(const Expr& a, const Expr& b);

/// Deepest accepted parenthesis/call nesting.
inline constexpr int kMaxNesting = 200;

/// Throws SyntaxError (ArityError for F/Ft with 0 or more than 3 names).
ExprPtr parse(std::string_view src);

std::string print_canonical(const Expr& e);

/// Debug rendering of the tree, e.g. TraceOf(Product[M, Ft[A]]).
std::string dump(const Expr& e);

/// Scalar for traces and pure numbers, a matrix for algebra expressions.
using Value = std::variant<complex, ComplexMatrix4>;

/// Algebra element denoted by an expression with no trace inside.
/// Throws EvalError when the expression contains Tr.
AlgebraElement to_element(const Expr& e);

/// Throws EvalError carrying the location of the offending node; its kind()
/// names the underlying error (UnknownForm, NullVectorForM, ...).
Value eval_expr(const Expr& e, const EvalContext& ctx);

}  // namespace cliff::dsl
