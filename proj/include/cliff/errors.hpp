#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace cliff {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// M and Mt divide by |eta(y,y)|^{1/2}; raised when y sits on the null cone.
class NullVectorForM : public Error {
 public:
  using Error::Error;
};

class UnknownForm : public Error {
 public:
  explicit UnknownForm(const std::string& name)
      : Error("unknown one-form '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnsupportedArity : public Error {
 public:
  using Error::Error;
};

class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

class NotNull : public Error {
 public:
  using Error::Error;
};

class MassRequired : public Error {
 public:
  using Error::Error;
};

class IncommensurateMomentum : public Error {
 public:
  using Error::Error;
};

/// Position of a token in DSL source text (1-based line and column).
struct SourceLocation {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::string to_string(const SourceLocation& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, SourceLocation loc)
      : Error(to_string(loc) + ": " + what), loc_(loc) {}
  const SourceLocation& location() const noexcept { return loc_; }

 private:
  SourceLocation loc_;
};

class ArityError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

/// Evaluation error re-raised with the location of the offending generator.
/// `kind` names the underlying error ("UnknownForm", "NullVectorForM", ...).
class EvalError : public Error {
 public:
  EvalError(std::string kind, const std::string& what, SourceLocation loc)
      : Error(to_string(loc) + ": " + what), kind_(std::move(kind)), loc_(loc) {}
  const std::string& kind() const noexcept { return kind_; }
  const SourceLocation& location() const noexcept { return loc_; }

 private:
  std::string kind_;
  SourceLocation loc_;
};

}  // namespace cliff
