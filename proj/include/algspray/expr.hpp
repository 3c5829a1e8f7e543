#pragma once

#include <memory>
#include <string>

#include "algspray/taylor.hpp"

namespace algspray {

// Reported with the byte offset of the offending token in the source text.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, size_t offset)
      : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  size_t offset() const { return offset_; }

private:
  size_t offset_;
};

// Immutable arithmetic expression over base variables x1..xn and fiber
// variables y1..ym.  Binary operators + - * / are left-associative with the
// usual precedence; ^ binds tightest, takes an integer literal exponent and
// is right-associative; unary minus sits between ^ and * /.  Functions:
// sin cos tan exp log sqrt sinh cosh.
class Expr {
public:
  enum class Kind { Number, VarX, VarY, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

  Kind kind;
  double number = 0.0;          // Number
  int index = 0;                // VarX / VarY, zero-based
  int exponent = 0;             // Pow
  Fn fn = Fn::Sin;              // Call
  std::shared_ptr<const Expr> a, b;

  // evaluates with each variable seeded as an independent Taylor variable;
  // base variables occupy slots 0..n-1, fiber variables n..n+m-1
  TaylorPoly eval(std::span<const double> x, std::span<const double> y,
                  const std::shared_ptr<const JetSpace>& space, int order) const;

  bool uses_y() const;

  std::string print() const;  // canonical, fully parenthesized
};

using ExprPtr = std::shared_ptr<const Expr>;

// Parses against a fixed arity: variable indices outside 1..n / 1..m are
// rejected at parse time.
ExprPtr parse_expr(const std::string& text, int n, int m);

}  // namespace algspray
