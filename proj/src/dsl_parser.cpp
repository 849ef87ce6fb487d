#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "cliff/dsl.hpp"

namespace cliff::dsl {

namespace {

enum class Tok { end, number, complex_lit, ident, plus, minus, star, lparen, rparen, lbracket, rbracket, comma };

struct Token {
  Tok kind = Tok::end;
  SourceLocation loc;
  std::string text;
  complex value{0.0, 0.0};
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::number:
    case Tok::complex_lit: return "number '" + t.text + "'";
    case Tok::ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = here();
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (digit(c) || (c == '.' && pos_ + 1 < src_.size() && digit(src_[pos_ + 1]))) {
        lex_number(t);
      } else if (ident_start(c)) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        t.kind = Tok::ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else {
        static constexpr std::string_view punct = "+-*()[],";
        static constexpr Tok kinds[] = {Tok::plus,     Tok::minus,    Tok::star,
                                        Tok::lparen,   Tok::rparen,   Tok::lbracket,
                                        Tok::rbracket, Tok::comma};
        const auto at = punct.find(c);
        if (at == std::string_view::npos) {
          std::string shown = std::isprint(static_cast<unsigned char>(c))
                                  ? std::string(1, c)
                                  : "\\x" + hex(static_cast<unsigned char>(c));
          throw SyntaxError("unexpected character '" + shown + "'", t.loc);
        }
        t.kind = kinds[at];
        t.text = std::string(1, c);
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static std::string hex(unsigned char c) {
    static constexpr char digits[] = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 15]};
  }

  SourceLocation here() const { return SourceLocation{pos_, line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  // Length of an unsigned real starting at `at`, 0 if none.
  std::size_t real_length(std::size_t at) const {
    std::size_t i = at;
    while (i < src_.size() && digit(src_[i])) ++i;
    if (i < src_.size() && src_[i] == '.') {
      ++i;
      while (i < src_.size() && digit(src_[i])) ++i;
    }
    if (i == at || (i == at + 1 && src_[at] == '.')) return 0;
    if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
      if (j < src_.size() && digit(src_[j])) {
        while (j < src_.size() && digit(src_[j])) ++j;
        i = j;
      }
    }
    return i - at;
  }

  double to_double(std::size_t at, std::size_t len, SourceLocation loc) const {
    double v = 0.0;
    const char* first = src_.data() + at;
    const auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc() || ptr != first + len || !std::isfinite(v)) {
      throw SyntaxError("number out of range '" + std::string(src_.substr(at, len)) + "'", loc);
    }
    return v;
  }

  // 'a+bi' is one token when the imaginary part follows; otherwise a real.
  void lex_number(Token& t) {
    const std::size_t start = pos_;
    const std::size_t len = real_length(pos_);
    const double re = to_double(pos_, len, t.loc);
    std::size_t i = pos_ + len;
    auto skip_ws = [&] {
      while (i < src_.size() && std::isspace(static_cast<unsigned char>(src_[i]))) ++i;
    };
    skip_ws();
    std::optional<double> im;
    std::size_t end = pos_ + len;
    if (i < src_.size() && (src_[i] == '+' || src_[i] == '-')) {
      const bool negative = src_[i] == '-';
      ++i;
      skip_ws();
      const std::size_t im_len = real_length(i);
      if (im_len > 0 && i + im_len < src_.size() && src_[i + im_len] == 'i' &&
          (i + im_len + 1 >= src_.size() || !ident_char(src_[i + im_len + 1]))) {
        const double v = to_double(i, im_len, t.loc);
        im = negative ? -v : v;
        end = i + im_len + 1;
      }
    }
    while (pos_ < end) advance();
    t.text = std::string(src_.substr(start, end - start));
    if (im) {
      t.kind = Tok::complex_lit;
      t.value = complex(re, *im);
    } else {
      t.kind = Tok::number;
      t.value = complex(re, 0.0);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

ExprPtr make(NodeKind kind, SourceLocation loc, std::vector<ExprPtr> children = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->loc = loc;
  e->children = std::move(children);
  return e;
}

// Signed zeros would print differently while comparing equal.
complex unsigned_zero(complex c) { return {c.real() + 0.0, c.imag() + 0.0}; }

ExprPtr make_scalar(complex c, SourceLocation loc) {
  auto e = make(NodeKind::scale, loc, {make(NodeKind::product, loc)});
  std::const_pointer_cast<Expr>(e)->scalar = unsigned_zero(c);
  return e;
}

ExprPtr make_scale(complex c, ExprPtr target, SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::scale;
  e->loc = loc;
  e->scalar = unsigned_zero(c);
  e->children.push_back(std::move(target));
  return e;
}

ExprPtr negate(const ExprPtr& x) {
  if (x->kind == NodeKind::scale) return make_scale(-x->scalar, x->children[0], x->loc);
  return make_scale(-1.0, x, x->loc);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr run() {
    if (peek().kind == Tok::end) throw SyntaxError("empty expression", peek().loc);
    ExprPtr e = expr();
    if (peek().kind != Tok::end) {
      throw SyntaxError("unexpected " + describe(peek()) + " after expression", peek().loc);
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw SyntaxError(std::string("expected ") + what + ", found " + describe(peek()),
                        peek().loc);
    }
    return take();
  }

  struct DepthGuard {
    int& depth;
    DepthGuard(int& d, SourceLocation loc) : depth(d) {
      if (++depth > kMaxNesting) throw SyntaxError("expression nested too deeply", loc);
    }
    ~DepthGuard() { --depth; }
  };

  ExprPtr expr() {
    const SourceLocation loc = peek().loc;
    std::vector<ExprPtr> terms{term()};
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = take().kind == Tok::minus;
      ExprPtr t = term();
      terms.push_back(minus ? negate(t) : t);
    }
    if (terms.size() == 1) return terms.front();
    return make(NodeKind::sum, loc, std::move(terms));
  }

  ExprPtr term() {
    const SourceLocation loc = peek().loc;
    std::vector<ExprPtr> factors{factor()};
    while (peek().kind == Tok::star) {
      take();
      factors.push_back(factor());
    }
    if (factors.size() == 1) return factors.front();

    complex c{1.0, 0.0};
    bool folded = false;
    std::vector<ExprPtr> rest;
    for (auto& f : factors) {
      if (f->is_bare_scalar()) {
        c *= f->scalar;
        folded = true;
      } else {
        rest.push_back(std::move(f));
      }
    }
    if (!folded) return make(NodeKind::product, loc, std::move(rest));
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw SyntaxError("scalar product overflows", loc);
    }
    ExprPtr target = rest.size() == 1 ? rest.front() : make(NodeKind::product, loc, std::move(rest));
    return make_scale(c, std::move(target), loc);
  }

  ExprPtr factor() {
    const Token& t = peek();
    const SourceLocation loc = t.loc;
    switch (t.kind) {
      case Tok::number:
      case Tok::complex_lit:
        return make_scalar(take().value, loc);
      case Tok::minus: {
        take();
        DepthGuard guard(depth_, loc);
        if (peek().kind == Tok::number || peek().kind == Tok::complex_lit) {
          const complex v = take().value;
          return make_scalar(complex(-v.real(), v.imag()), loc);
        }
        return negate(factor());
      }
      case Tok::lparen: {
        take();
        DepthGuard guard(depth_, loc);
        ExprPtr inner = expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident:
        break;
      default:
        throw SyntaxError("expected a factor, found " + describe(t), loc);
    }

    const std::string name = take().text;
    if (name == "Tr") {
      expect(Tok::lparen, "'(' after Tr");
      DepthGuard guard(depth_, loc);
      ExprPtr inner = expr();
      expect(Tok::rparen, "')'");
      return make(NodeKind::trace_of, loc, {inner});
    }
    if (name == "Grade") {
      expect(Tok::lbracket, "'[' after Grade");
      const Token& k = expect(Tok::number, "grade index");
      const double v = k.value.real();
      if (k.text.find_first_not_of("0123456789") != std::string::npos || v > 1e6) {
        throw SyntaxError("grade index must be a non-negative integer, found '" + k.text + "'",
                          k.loc);
      }
      expect(Tok::rbracket, "']'");
      expect(Tok::lparen, "'(' after Grade[k]");
      DepthGuard guard(depth_, loc);
      ExprPtr inner = expr();
      expect(Tok::rparen, "')'");
      auto e = std::const_pointer_cast<Expr>(make(NodeKind::grade_part, loc, {inner}));
      e->grade = static_cast<int>(v);
      return e;
    }
    if (name == "M" || name == "Mt") {
      auto e = std::const_pointer_cast<Expr>(make(NodeKind::generator_ref, loc));
      e->generator = name == "M" ? GeneratorKind::M : GeneratorKind::Mt;
      return e;
    }
    if (name == "F" || name == "Ft") {
      auto e = std::const_pointer_cast<Expr>(make(NodeKind::generator_ref, loc));
      e->generator = name == "F" ? GeneratorKind::F : GeneratorKind::Ft;
      expect(Tok::lbracket, ("'[' after " + name).c_str());
      if (peek().kind == Tok::rbracket) {
        throw ArityError(name + "[] needs between 1 and 3 form names", loc);
      }
      e->forms.push_back(expect(Tok::ident, "form name").text);
      while (peek().kind == Tok::comma) {
        take();
        e->forms.push_back(expect(Tok::ident, "form name").text);
      }
      expect(Tok::rbracket, "']'");
      if (e->forms.size() > Generator::kMaxArity) {
        throw ArityError(name + " takes at most 3 form names, got " +
                             std::to_string(e->forms.size()),
                         loc);
      }
      return e;
    }
    throw SyntaxError("unknown name '" + name + "'", loc);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int depth_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view src) { return Parser(Lexer(src).run()).run(); }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case NodeKind::scale:
      if (a.scalar != b.scalar) return false;
      break;
    case NodeKind::generator_ref:
      if (a.generator != b.generator || a.forms != b.forms) return false;
      break;
    case NodeKind::grade_part:
      if (a.grade != b.grade) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

}  // namespace cliff::dsl
