#include "cliff/dsl.hpp"
#include "cliff/format.hpp"

namespace cliff::dsl {

namespace {

std::string scalar_text(complex c) {
  return c.imag() == 0.0 ? format_double(c.real()) : format_complex(c);
}

std::string generator_text(const Expr& e) {
  std::string s;
  switch (e.generator) {
    case GeneratorKind::M: return "M";
    case GeneratorKind::Mt: return "Mt";
    case GeneratorKind::F: s = "F["; break;
    case GeneratorKind::Ft: s = "Ft["; break;
  }
  for (std::size_t i = 0; i < e.forms.size(); ++i) {
    if (i) s += ',';
    s += e.forms[i];
  }
  return s + ']';
}

bool negative_real(const Expr& e) {
  return e.kind == NodeKind::scale && e.scalar.imag() == 0.0 && e.scalar.real() < 0.0;
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case NodeKind::generator_ref:
      out += generator_text(e);
      return;
    case NodeKind::trace_of:
      out += "Tr(";
      print(*e.children[0], out);
      out += ')';
      return;
    case NodeKind::grade_part:
      out += "Grade[" + std::to_string(e.grade) + "](";
      print(*e.children[0], out);
      out += ')';
      return;
    case NodeKind::scale: {
      out += scalar_text(e.scalar);
      const Expr& t = *e.children[0];
      if (t.kind == NodeKind::product && t.children.empty()) return;
      out += '*';
      print_wrapped(t, t.kind == NodeKind::sum || t.kind == NodeKind::scale, out);
      return;
    }
    case NodeKind::product:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += '*';
        const NodeKind k = e.children[i]->kind;
        print_wrapped(*e.children[i],
                      k == NodeKind::sum || k == NodeKind::scale || k == NodeKind::product, out);
      }
      return;
    case NodeKind::sum:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const Expr& t = *e.children[i];
        if (i > 0 && negative_real(t)) {
          Expr flipped = t;
          flipped.scalar = -t.scalar;
          out += '-';
          print(flipped, out);
          continue;
        }
        if (i > 0) out += '+';
        print_wrapped(t, t.kind == NodeKind::sum, out);
      }
      return;
  }
}

void dump(const Expr& e, std::string& out) {
  auto list = [&](const char* open, const char* close) {
    out += open;
    for (std::size_t i = 0; i < e.children.size(); ++i) {
      if (i) out += ", ";
      dump(*e.children[i], out);
    }
    out += close;
  };
  switch (e.kind) {
    case NodeKind::generator_ref: out += generator_text(e); return;
    case NodeKind::trace_of: out += "TraceOf"; list("(", ")"); return;
    case NodeKind::grade_part: out += "Grade" + std::to_string(e.grade); list("(", ")"); return;
    case NodeKind::scale: out += "Scale(" + format_complex(e.scalar) + ", "; list("", ")"); return;
    case NodeKind::product: out += "Product"; list("[", "]"); return;
    case NodeKind::sum: out += "Sum"; list("[", "]"); return;
  }
}

}  // namespace

std::string print_canonical(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::string dump(const Expr& e) {
  std::string out;
  dump(e, out);
  return out;
}

}  // namespace cliff::dsl
